#ifndef CIRCNET_CIRCULANT_HPP
#define CIRCNET_CIRCULANT_HPP

#include <atomic>
#include <complex>
#include <cstdint>
#include <mutex>
#include <span>
#include <vector>

#include "circnet/matrix.hpp"

namespace circnet {

enum class LayerMode : std::uint8_t { trained = 0, randomized = 1 };

/// Fixed +-1 diagonal (the sign-flipping matrix), reproducible from its seed.
struct SignVector {
  std::vector<std::int8_t> signs;
  std::uint64_t seed = 0;

  static SignVector rademacher(std::size_t n, std::uint64_t seed);
  static SignVector all_plus(std::size_t n);  // ablation: sign flipping disabled
};

struct ParamCount {
  std::size_t floats = 0;
  std::size_t sign_bits = 0;
};

/// Per-batch state the backward pass needs from the matching forward call.
struct CirculantCache {
  Matrix z;                                  // batch x n, sign-flipped padded input
  std::vector<std::complex<double>> z_spec;  // batch x n row-major spectra
  std::size_t batch = 0;
  std::size_t n = 0;
};

struct LayerGradients {
  std::vector<double> grad_r;  // length n, summed over batch (empty if skipped)
  Matrix grad_input;           // batch x d_in
};

// Fully-connected layer whose weight matrix is circulant: y = first k_out
// entries of circ(r) * (signs o pad(x)). The n x n matrix itself is never
// formed; forward and both gradients run through length-n FFTs. Parameter
// cost is n floats plus n sign bits, against d_in*k_out for a dense layer.
class CirculantLayer {
 public:
  // n = next_pow2(max(d_in, k_out)). Trained mode draws r ~ N(0, 1/n),
  // randomized mode r ~ N(0, 1) with updates rejected. sign_flip=false
  // replaces the Rademacher diagonal with identity (ablation runs).
  CirculantLayer(std::size_t d_in, std::size_t k_out, LayerMode mode,
                 std::uint64_t seed, bool sign_flip = true);

  CirculantLayer(const CirculantLayer& other);
  CirculantLayer& operator=(const CirculantLayer& other);

  /// x is batch x d_in; returns pre-activations batch x k_out. Pass a cache
  /// to run backward() later.
  Matrix forward(const Matrix& x, CirculantCache* cache = nullptr) const;

  /// upstream is batch x k_out. grad_r = sum_b circ_corr(z_b, pad(delta_b));
  /// grad_input_b = signs o circ_corr(r, pad(delta_b)) truncated to d_in.
  LayerGradients backward(const Matrix& upstream, const CirculantCache& cache,
                          bool want_param_grad = true) const;

  /// r += step (length n); invalidates the spectrum cache. Rejected in
  /// randomized mode.
  void apply_update(std::span<const double> step);

  /// (n floats, n sign bits).
  ParamCount param_count() const;

  /// Explicit k_out x d_in dense equivalent circ(r)*D, for oracles and the
  /// bench correctness gate.
  Matrix materialize() const;

  std::size_t d_in() const { return d_in_; }
  std::size_t k_out() const { return k_out_; }
  std::size_t fft_size() const { return n_; }
  LayerMode mode() const { return mode_; }
  bool sign_flip_enabled() const { return sign_flip_; }
  std::uint64_t sign_seed() const { return signs_.seed; }

  std::span<const double> weights() const { return r_; }
  std::span<const std::int8_t> signs() const { return signs_.signs; }

  /// Replaces r wholesale (deserialization, finite-difference probes).
  void set_weights(std::span<const double> r);

  bool spectrum_cached() const { return r_spec_valid_.load(std::memory_order_acquire); }
  /// Current cached spectrum (forces a fill); equals dft(r).
  std::vector<std::complex<double>> spectrum() const;

 private:
  const std::vector<std::complex<double>>& ensure_spectrum() const;

  std::size_t d_in_, k_out_, n_;
  LayerMode mode_;
  bool sign_flip_;
  std::vector<double> r_;
  SignVector signs_;

  mutable std::vector<std::complex<double>> r_spec_;
  mutable std::atomic<bool> r_spec_valid_{false};
  mutable std::mutex spec_mu_;
};

}  // namespace circnet

#endif  // CIRCNET_CIRCULANT_HPP
