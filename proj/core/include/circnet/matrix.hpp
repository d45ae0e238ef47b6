#ifndef CIRCNET_MATRIX_HPP
#define CIRCNET_MATRIX_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "circnet/error.hpp"

namespace circnet {

// Dense row-major matrix of doubles. Rows are samples throughout the
// library: an activation batch is batch x dim.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  double* row(std::size_t r) { return data_.data() + r * cols_; }
  const double* row(std::size_t r) const { return data_.data() + r * cols_; }

  std::span<double> row_span(std::size_t r) { return {row(r), cols_}; }
  std::span<const double> row_span(std::size_t r) const { return {row(r), cols_}; }

  std::vector<double>& data() { return data_; }
  const std::vector<double>& data() const { return data_; }

  void fill(double v) { data_.assign(data_.size(), v); }

  bool same_shape(const Matrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  std::size_t rows_, cols_;
  std::vector<double> data_;
};

inline void require_shape(const Matrix& m, std::size_t rows, std::size_t cols,
                          const char* what) {
  if (m.rows() != rows || m.cols() != cols) {
    raise(ErrorKind::shape, std::string(what) + ": expected " +
                                std::to_string(rows) + "x" + std::to_string(cols) +
                                ", got " + std::to_string(m.rows()) + "x" +
                                std::to_string(m.cols()));
  }
}

}  // namespace circnet

#endif  // CIRCNET_MATRIX_HPP
