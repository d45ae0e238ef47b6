#ifndef CIRCNET_FFT_HPP
#define CIRCNET_FFT_HPP

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace circnet {

/// Frequency-domain view of a real length-n signal.
struct ComplexSpectrum {
  std::vector<double> re;
  std::vector<double> im;

  ComplexSpectrum() = default;
  explicit ComplexSpectrum(std::size_t n) : re(n, 0.0), im(n, 0.0) {}

  std::size_t size() const { return re.size(); }
};

/// Smallest power of two >= m (m >= 1).
std::size_t next_pow2(std::size_t m);

inline bool is_pow2(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

// In-place radix-2 transform with bit-reversal reordering. Length must be a
// power of two. The forward transform is unnormalized; the inverse carries
// the 1/n factor. Twiddle tables are cached per size behind a mutex, so
// concurrent calls are safe once a size has been seen.
void fft_inplace(std::span<std::complex<double>> buf, bool inverse);

// Builds the twiddle/bit-reversal tables for size n up front (optional; the
// tables are otherwise created on first use).
void warm_fft_tables(std::size_t n);

/// Forward DFT of a real power-of-two-length signal:
/// X[j] = sum_t x[t] * exp(-2*pi*i*j*t/n).
ComplexSpectrum dft(std::span<const double> x);

/// Inverse DFT back to a real signal. The imaginary residue of the inverse
/// transform must stay below 1e-6 in max-abs (it is discarded); anything
/// larger signals a corrupted spectrum and raises a numeric error.
std::vector<double> idft(const ComplexSpectrum& X);

/// Cyclic convolution c[i] = sum_j a[j] * b[(i-j) mod n], computed in the
/// Fourier domain. Lengths must match and be powers of two.
std::vector<double> circ_conv(std::span<const double> a, std::span<const double> b);

/// Cyclic correlation c[i] = sum_j a[j] * b[(i+j) mod n], the adjoint of
/// circ_conv in its first argument; computed as idft(conj(dft(a)) o dft(b)).
std::vector<double> circ_corr(std::span<const double> a, std::span<const double> b);

}  // namespace circnet

#endif  // CIRCNET_FFT_HPP
