#include "circnet/dense.hpp"

#include <cmath>

#include "circnet/error.hpp"
#include "circnet/rng.hpp"
#include "circnet/threads.hpp"

namespace circnet {

DenseLayer::DenseLayer(std::size_t d_in, std::size_t k_out, LayerMode mode,
                       std::uint64_t seed)
    : d_in_(d_in), k_out_(k_out), mode_(mode), w_(k_out, d_in) {
  if (d_in == 0 || k_out == 0) {
    raise(ErrorKind::argument, "DenseLayer: dims must be >= 1");
  }
  Rng rng(derive_seed(seed, 0));
  const double stddev =
      mode == LayerMode::randomized ? 1.0 : 1.0 / std::sqrt(double(d_in));
  for (auto& v : w_.data()) v = rng.normal(0.0, stddev);
}

DenseLayer DenseLayer::from_matrix(Matrix w, LayerMode mode) {
  if (w.rows() == 0 || w.cols() == 0) {
    raise(ErrorKind::argument, "DenseLayer::from_matrix: empty matrix");
  }
  DenseLayer layer;
  layer.d_in_ = w.cols();
  layer.k_out_ = w.rows();
  layer.mode_ = mode;
  layer.w_ = std::move(w);
  return layer;
}

Matrix DenseLayer::forward(const Matrix& x, DenseCache* cache) const {
  if (x.cols() != d_in_) {
    raise(ErrorKind::shape, "DenseLayer::forward: input has " +
                                std::to_string(x.cols()) + " columns, layer d_in is " +
                                std::to_string(d_in_));
  }
  for (double v : x.data()) {
    if (!std::isfinite(v)) raise(ErrorKind::data, "DenseLayer::forward: non-finite input");
  }
  const std::size_t batch = x.rows();
  if (cache) cache->x = x;

  Matrix out(batch, k_out_);
  parallel_for(0, batch, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t b = lo; b < hi; ++b) {
      const double* xb = x.row(b);
      double* ob = out.row(b);
      for (std::size_t i = 0; i < k_out_; ++i) {
        const double* wi = w_.row(i);
        double acc = 0.0;
        for (std::size_t j = 0; j < d_in_; ++j) acc += wi[j] * xb[j];
        ob[i] = acc;
      }
    }
  });
  return out;
}

DenseGradients DenseLayer::backward(const Matrix& upstream, const DenseCache& cache,
                                    bool want_param_grad, bool want_input_grad) const {
  if (cache.x.cols() != d_in_ || cache.x.rows() != upstream.rows() ||
      upstream.cols() != k_out_) {
    raise(ErrorKind::state, "DenseLayer::backward: cache does not match upstream");
  }
  const std::size_t batch = upstream.rows();

  DenseGradients grads;
  if (want_param_grad) {
    grads.grad_w = Matrix(k_out_, d_in_);
    // one output row per task: batch accumulation order is fixed per row
    parallel_for(0, k_out_, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t i = lo; i < hi; ++i) {
        double* gw = grads.grad_w.row(i);
        for (std::size_t b = 0; b < batch; ++b) {
          const double d = upstream(b, i);
          if (d == 0.0) continue;
          const double* xb = cache.x.row(b);
          for (std::size_t j = 0; j < d_in_; ++j) gw[j] += d * xb[j];
        }
      }
    });
  }
  if (want_input_grad) {
    grads.grad_input = Matrix(batch, d_in_);
    parallel_for(0, batch, [&](std::size_t lo, std::size_t hi) {
      for (std::size_t b = lo; b < hi; ++b) {
        const double* ub = upstream.row(b);
        double* gb = grads.grad_input.row(b);
        for (std::size_t i = 0; i < k_out_; ++i) {
          const double d = ub[i];
          if (d == 0.0) continue;
          const double* wi = w_.row(i);
          for (std::size_t j = 0; j < d_in_; ++j) gb[j] += d * wi[j];
        }
      }
    });
  }
  return grads;
}

void DenseLayer::apply_update(std::span<const double> step) {
  if (mode_ == LayerMode::randomized) {
    raise(ErrorKind::mode, "DenseLayer::apply_update: randomized layer is frozen");
  }
  auto& w = w_.data();
  if (step.size() != w.size()) {
    raise(ErrorKind::length, "DenseLayer::apply_update: step length mismatch");
  }
  for (double v : step) {
    if (!std::isfinite(v)) raise(ErrorKind::data, "DenseLayer::apply_update: non-finite step");
  }
  for (std::size_t i = 0; i < w.size(); ++i) w[i] += step[i];
}

void DenseLayer::set_weights(std::span<const double> w) {
  if (w.size() != w_.data().size()) {
    raise(ErrorKind::length, "DenseLayer::set_weights: length mismatch");
  }
  std::copy(w.begin(), w.end(), w_.data().begin());
}

}  // namespace circnet
