#include "circnet/circulant.hpp"

#include <cmath>

#include "circnet/error.hpp"
#include "circnet/fft.hpp"
#include "circnet/rng.hpp"
#include "circnet/threads.hpp"

namespace circnet {

namespace {

thread_local std::vector<std::complex<double>> tl_buf_a;
thread_local std::vector<std::complex<double>> tl_buf_b;

void check_finite_rows(const Matrix& x, const char* what) {
  for (double v : x.data()) {
    if (!std::isfinite(v)) {
      raise(ErrorKind::data, std::string(what) + ": non-finite input value");
    }
  }
}

}  // namespace

SignVector SignVector::rademacher(std::size_t n, std::uint64_t seed) {
  SignVector sv;
  sv.seed = seed;
  sv.signs.resize(n);
  Rng rng(seed);
  for (auto& s : sv.signs) s = static_cast<std::int8_t>(rng.sign());
  return sv;
}

SignVector SignVector::all_plus(std::size_t n) {
  SignVector sv;
  sv.seed = 0;
  sv.signs.assign(n, 1);
  return sv;
}

CirculantLayer::CirculantLayer(std::size_t d_in, std::size_t k_out, LayerMode mode,
                               std::uint64_t seed, bool sign_flip)
    : d_in_(d_in), k_out_(k_out), mode_(mode), sign_flip_(sign_flip) {
  if (d_in == 0 || k_out == 0) {
    raise(ErrorKind::argument, "CirculantLayer: dims must be >= 1");
  }
  n_ = next_pow2(std::max(d_in, k_out));

  Rng weight_rng(derive_seed(seed, 0));
  const double stddev = mode == LayerMode::randomized ? 1.0 : 1.0 / std::sqrt(double(n_));
  r_.resize(n_);
  for (auto& v : r_) v = weight_rng.normal(0.0, stddev);

  signs_ = sign_flip ? SignVector::rademacher(n_, derive_seed(seed, 1))
                     : SignVector::all_plus(n_);
}

CirculantLayer::CirculantLayer(const CirculantLayer& other)
    : d_in_(other.d_in_),
      k_out_(other.k_out_),
      n_(other.n_),
      mode_(other.mode_),
      sign_flip_(other.sign_flip_),
      r_(other.r_),
      signs_(other.signs_) {}

CirculantLayer& CirculantLayer::operator=(const CirculantLayer& other) {
  if (this != &other) {
    d_in_ = other.d_in_;
    k_out_ = other.k_out_;
    n_ = other.n_;
    mode_ = other.mode_;
    sign_flip_ = other.sign_flip_;
    r_ = other.r_;
    signs_ = other.signs_;
    r_spec_valid_.store(false, std::memory_order_release);
    r_spec_.clear();
  }
  return *this;
}

const std::vector<std::complex<double>>& CirculantLayer::ensure_spectrum() const {
  if (!r_spec_valid_.load(std::memory_order_acquire)) {
    std::lock_guard<std::mutex> lock(spec_mu_);
    if (!r_spec_valid_.load(std::memory_order_relaxed)) {
      r_spec_.assign(r_.begin(), r_.end());
      fft_inplace(r_spec_, false);
      r_spec_valid_.store(true, std::memory_order_release);
    }
  }
  return r_spec_;
}

std::vector<std::complex<double>> CirculantLayer::spectrum() const {
  return ensure_spectrum();
}

Matrix CirculantLayer::forward(const Matrix& x, CirculantCache* cache) const {
  if (x.cols() != d_in_) {
    raise(ErrorKind::shape, "CirculantLayer::forward: input has " +
                                std::to_string(x.cols()) + " columns, layer d_in is " +
                                std::to_string(d_in_));
  }
  check_finite_rows(x, "CirculantLayer::forward");

  const std::size_t batch = x.rows();
  const auto& r_spec = ensure_spectrum();
  warm_fft_tables(n_);

  Matrix out(batch, k_out_);
  if (cache) {
    cache->z = Matrix(batch, n_);
    cache->z_spec.assign(batch * n_, {});
    cache->batch = batch;
    cache->n = n_;
  }

  parallel_for(0, batch, [&](std::size_t lo, std::size_t hi) {
    auto& buf = tl_buf_a;
    for (std::size_t b = lo; b < hi; ++b) {
      buf.assign(n_, {});
      const double* xb = x.row(b);
      for (std::size_t j = 0; j < d_in_; ++j) {
        buf[j] = double(signs_.signs[j]) * xb[j];
      }
      if (cache) {
        double* zb = cache->z.row(b);
        for (std::size_t j = 0; j < n_; ++j) zb[j] = buf[j].real();
      }
      fft_inplace(buf, false);
      if (cache) {
        std::copy(buf.begin(), buf.end(), cache->z_spec.begin() + b * n_);
      }
      for (std::size_t j = 0; j < n_; ++j) buf[j] *= r_spec[j];
      fft_inplace(buf, true);
      double* ob = out.row(b);
      for (std::size_t j = 0; j < k_out_; ++j) ob[j] = buf[j].real();
    }
  });
  return out;
}

LayerGradients CirculantLayer::backward(const Matrix& upstream,
                                        const CirculantCache& cache,
                                        bool want_param_grad) const {
  if (cache.n != n_ || cache.batch != cache.z.rows()) {
    raise(ErrorKind::state, "CirculantLayer::backward: cache does not match layer");
  }
  if (upstream.rows() != cache.batch || upstream.cols() != k_out_) {
    raise(ErrorKind::state,
          "CirculantLayer::backward: upstream shape does not match cached forward");
  }

  const std::size_t batch = upstream.rows();
  const auto& r_spec = ensure_spectrum();

  LayerGradients grads;
  grads.grad_input = Matrix(batch, d_in_);
  // Per-sample parameter-gradient rows, summed serially afterwards so the
  // result is bit-identical to a per-sample loop at any thread count.
  Matrix grad_r_rows;
  if (want_param_grad) grad_r_rows = Matrix(batch, n_);

  parallel_for(0, batch, [&](std::size_t lo, std::size_t hi) {
    auto& delta = tl_buf_a;
    auto& work = tl_buf_b;
    for (std::size_t b = lo; b < hi; ++b) {
      // delta padded with zeros to n (the k < d rule applied to gradients)
      delta.assign(n_, {});
      const double* ub = upstream.row(b);
      for (std::size_t j = 0; j < k_out_; ++j) delta[j] = ub[j];
      fft_inplace(delta, false);

      if (want_param_grad) {
        const std::complex<double>* zb = cache.z_spec.data() + b * n_;
        work.resize(n_);
        for (std::size_t j = 0; j < n_; ++j) work[j] = std::conj(zb[j]) * delta[j];
        fft_inplace(work, true);
        double* gr = grad_r_rows.row(b);
        for (std::size_t j = 0; j < n_; ++j) gr[j] = work[j].real();
      }

      // transpose pass: D * circ(r)^T * delta, truncated to d_in
      work.resize(n_);
      for (std::size_t j = 0; j < n_; ++j) work[j] = std::conj(r_spec[j]) * delta[j];
      fft_inplace(work, true);
      double* gi = grads.grad_input.row(b);
      for (std::size_t j = 0; j < d_in_; ++j) {
        gi[j] = double(signs_.signs[j]) * work[j].real();
      }
    }
  });

  if (want_param_grad) {
    grads.grad_r.assign(n_, 0.0);
    for (std::size_t b = 0; b < batch; ++b) {
      const double* gr = grad_r_rows.row(b);
      for (std::size_t j = 0; j < n_; ++j) grads.grad_r[j] += gr[j];
    }
  }
  return grads;
}

void CirculantLayer::apply_update(std::span<const double> step) {
  if (mode_ == LayerMode::randomized) {
    raise(ErrorKind::mode, "CirculantLayer::apply_update: randomized layer is frozen");
  }
  if (step.size() != n_) {
    raise(ErrorKind::length, "CirculantLayer::apply_update: step length " +
                                 std::to_string(step.size()) + ", expected " +
                                 std::to_string(n_));
  }
  for (double v : step) {
    if (!std::isfinite(v)) {
      raise(ErrorKind::data, "CirculantLayer::apply_update: non-finite step");
    }
  }
  for (std::size_t i = 0; i < n_; ++i) r_[i] += step[i];
  r_spec_valid_.store(false, std::memory_order_release);
}

void CirculantLayer::set_weights(std::span<const double> r) {
  if (r.size() != n_) {
    raise(ErrorKind::length, "CirculantLayer::set_weights: expected length " +
                                 std::to_string(n_));
  }
  r_.assign(r.begin(), r.end());
  r_spec_valid_.store(false, std::memory_order_release);
}

ParamCount CirculantLayer::param_count() const { return {n_, n_}; }

Matrix CirculantLayer::materialize() const {
  Matrix w(k_out_, d_in_);
  for (std::size_t i = 0; i < k_out_; ++i) {
    for (std::size_t j = 0; j < d_in_; ++j) {
      const std::size_t idx = (i + n_ - j % n_) % n_;
      w(i, j) = r_[idx] * double(signs_.signs[j]);
    }
  }
  return w;
}

}  // namespace circnet
