#ifndef CIRCNET_DENSE_HPP
#define CIRCNET_DENSE_HPP

#include <cstdint>
#include <span>

#include "circnet/circulant.hpp"
#include "circnet/matrix.hpp"

namespace circnet {

struct DenseCache {
  Matrix x;  // batch x d_in input copy
};

struct DenseGradients {
  Matrix grad_w;      // k_out x d_in, summed over batch (empty if skipped)
  Matrix grad_input;  // batch x d_in (empty if skipped)
};

// Unstructured fully-connected baseline: y = x * W^T with W of shape
// k_out x d_in. Trained mode initializes W ~ N(0, 1/d_in); randomized mode
// W ~ N(0, 1) and frozen.
class DenseLayer {
 public:
  DenseLayer(std::size_t d_in, std::size_t k_out, LayerMode mode, std::uint64_t seed);

  /// Wraps an explicit weight matrix (oracle comparisons, bench gate).
  static DenseLayer from_matrix(Matrix w, LayerMode mode = LayerMode::trained);

  Matrix forward(const Matrix& x, DenseCache* cache = nullptr) const;

  /// grad_w[i][j] = sum_b upstream[b][i] * x[b][j]; grad_input = upstream * W.
  DenseGradients backward(const Matrix& upstream, const DenseCache& cache,
                          bool want_param_grad = true,
                          bool want_input_grad = true) const;

  /// W += step (row-major, length d_in*k_out). Rejected in randomized mode.
  void apply_update(std::span<const double> step);

  ParamCount param_count() const { return {d_in_ * k_out_, 0}; }

  std::size_t d_in() const { return d_in_; }
  std::size_t k_out() const { return k_out_; }
  LayerMode mode() const { return mode_; }

  std::span<const double> weights() const { return w_.data(); }
  void set_weights(std::span<const double> w);
  const Matrix& weight_matrix() const { return w_; }

 private:
  DenseLayer() : d_in_(0), k_out_(0), mode_(LayerMode::trained) {}

  std::size_t d_in_, k_out_;
  LayerMode mode_;
  Matrix w_;  // k_out x d_in
};

}  // namespace circnet

#endif  // CIRCNET_DENSE_HPP
