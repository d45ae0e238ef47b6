#include "circnet/fft.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>

#include "circnet/error.hpp"

namespace circnet {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

struct FftTables {
  std::vector<std::size_t> bitrev;             // index permutation
  std::vector<std::complex<double>> twiddle;   // exp(-2*pi*i*k/n), k < n/2
};

const FftTables& tables_for(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, std::unique_ptr<FftTables>> cache;

  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return *it->second;

  auto t = std::make_unique<FftTables>();
  t->bitrev.resize(n);
  std::size_t log2n = 0;
  while ((std::size_t(1) << log2n) < n) ++log2n;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t rev = 0, v = i;
    for (std::size_t b = 0; b < log2n; ++b) {
      rev = (rev << 1) | (v & 1);
      v >>= 1;
    }
    t->bitrev[i] = rev;
  }
  t->twiddle.resize(n / 2);
  for (std::size_t k = 0; k < n / 2; ++k) {
    const double ang = -kTwoPi * double(k) / double(n);
    t->twiddle[k] = {std::cos(ang), std::sin(ang)};
  }
  const FftTables& ref = *t;
  cache.emplace(n, std::move(t));
  return ref;
}

void require_pow2(std::size_t n, const char* what) {
  if (!is_pow2(n)) {
    raise(ErrorKind::length,
          std::string(what) + ": length " + std::to_string(n) +
              " is not a power of two");
  }
}

}  // namespace

std::size_t next_pow2(std::size_t m) {
  if (m == 0) raise(ErrorKind::argument, "next_pow2: m must be >= 1");
  std::size_t n = 1;
  while (n < m) n <<= 1;
  return n;
}

void warm_fft_tables(std::size_t n) {
  require_pow2(n, "warm_fft_tables");
  (void)tables_for(n);
}

void fft_inplace(std::span<std::complex<double>> buf, bool inverse) {
  const std::size_t n = buf.size();
  require_pow2(n, "fft_inplace");
  if (n == 1) return;

  const FftTables& t = tables_for(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = t.bitrev[i];
    if (j > i) std::swap(buf[i], buf[j]);
  }

  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len >> 1;
    const std::size_t stride = n / len;
    for (std::size_t base = 0; base < n; base += len) {
      for (std::size_t k = 0; k < half; ++k) {
        std::complex<double> w = t.twiddle[k * stride];
        if (inverse) w = std::conj(w);
        const std::complex<double> odd = buf[base + k + half] * w;
        const std::complex<double> even = buf[base + k];
        buf[base + k] = even + odd;
        buf[base + k + half] = even - odd;
      }
    }
  }

  if (inverse) {
    const double scale = 1.0 / double(n);
    for (auto& v : buf) v *= scale;
  }
}

ComplexSpectrum dft(std::span<const double> x) {
  require_pow2(x.size(), "dft");
  std::vector<std::complex<double>> buf(x.begin(), x.end());
  fft_inplace(buf, false);
  ComplexSpectrum out(x.size());
  for (std::size_t i = 0; i < buf.size(); ++i) {
    out.re[i] = buf[i].real();
    out.im[i] = buf[i].imag();
  }
  return out;
}

std::vector<double> idft(const ComplexSpectrum& X) {
  if (X.re.size() != X.im.size()) {
    raise(ErrorKind::length, "idft: re/im length mismatch");
  }
  require_pow2(X.size(), "idft");
  std::vector<std::complex<double>> buf(X.size());
  for (std::size_t i = 0; i < buf.size(); ++i) buf[i] = {X.re[i], X.im[i]};
  fft_inplace(buf, true);

  std::vector<double> out(buf.size());
  double residue = 0.0;
  for (std::size_t i = 0; i < buf.size(); ++i) {
    out[i] = buf[i].real();
    residue = std::max(residue, std::abs(buf[i].imag()));
  }
  if (residue >= 1e-6) {
    raise(ErrorKind::numeric,
          "idft: imaginary residue " + std::to_string(residue) +
              " exceeds 1e-6; spectrum is not that of a real signal");
  }
  return out;
}

namespace {

std::vector<double> transform_pair(std::span<const double> a,
                                   std::span<const double> b, bool conjugate_a,
                                   const char* what) {
  if (a.size() != b.size()) {
    raise(ErrorKind::length, std::string(what) + ": length mismatch " +
                                 std::to_string(a.size()) + " vs " +
                                 std::to_string(b.size()));
  }
  require_pow2(a.size(), what);
  const std::size_t n = a.size();

  std::vector<std::complex<double>> fa(a.begin(), a.end());
  std::vector<std::complex<double>> fb(b.begin(), b.end());
  fft_inplace(fa, false);
  fft_inplace(fb, false);
  for (std::size_t i = 0; i < n; ++i) {
    const std::complex<double> lhs = conjugate_a ? std::conj(fa[i]) : fa[i];
    fa[i] = lhs * fb[i];
  }
  fft_inplace(fa, true);

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = fa[i].real();
  return out;
}

}  // namespace

std::vector<double> circ_conv(std::span<const double> a, std::span<const double> b) {
  return transform_pair(a, b, false, "circ_conv");
}

std::vector<double> circ_corr(std::span<const double> a, std::span<const double> b) {
  return transform_pair(a, b, true, "circ_corr");
}

}  // namespace circnet
