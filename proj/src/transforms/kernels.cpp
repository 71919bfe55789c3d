#include "kernels.hpp"

#include "dtssfn/rng.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace dtssfn::detail {

namespace {

std::size_t log2_exact(std::size_t n) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  return bits;
}

std::size_t bit_reverse(std::size_t v, std::size_t bits) {
  std::size_t r = 0;
  for (std::size_t b = 0; b < bits; ++b) {
    r = (r << 1) | ((v >> b) & 1U);
  }
  return r;
}

void ensure(std::vector<double>& v, std::size_t n) {
  if (v.size() < n) v.resize(n);
}

void ensure(std::vector<Complex>& v, std::size_t n) {
  if (v.size() < n) v.resize(n);
}

}  // namespace

std::vector<std::size_t> sequency_permutation(std::size_t n) {
  const std::size_t bits = log2_exact(n);
  std::vector<std::size_t> perm(n);
  for (std::size_t s = 0; s < n; ++s) {
    perm[s] = bit_reverse(s ^ (s >> 1), bits);
  }
  return perm;
}

Matrix random_matrix(std::uint64_t seed, std::size_t n) {
  Rng rng(seed);
  Matrix w(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      w(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = rng.normal() * scale;
    }
  }
  return w;
}

// Walsh-Hadamard ----------------------------------------------------------

FwhtKernel::FwhtKernel(std::size_t n, bool sequency)
    : n_(n), scale_(1.0 / std::sqrt(static_cast<double>(n))) {
  assert(is_power_of_two(n));
  if (sequency) sequency_to_natural_ = sequency_permutation(n);
}

void FwhtKernel::reserve(Workspace& ws) const {
  if (!sequency_to_natural_.empty()) ensure(ws.real, n_);
}

void FwhtKernel::forward(std::span<const double> x, std::span<double> y, Workspace& ws) const {
  std::span<double> a = sequency_to_natural_.empty() ? y : std::span<double>(ws.real).first(n_);
  std::copy(x.begin(), x.end(), a.begin());
  for (std::size_t h = 1; h < n_; h <<= 1) {
    for (std::size_t i = 0; i < n_; i += 2 * h) {
      for (std::size_t j = i; j < i + h; ++j) {
        const double u = a[j];
        const double v = a[j + h];
        a[j] = u + v;
        a[j + h] = u - v;
      }
    }
  }
  if (sequency_to_natural_.empty()) {
    for (auto& v : y) v *= scale_;
  } else {
    for (std::size_t k = 0; k < n_; ++k) y[k] = a[sequency_to_natural_[k]] * scale_;
  }
}

// DCT-II (Makhoul's single N-point FFT reordering) ----------------------------

DctKernel::DctKernel(std::size_t n) : n_(n), fft_(n), post_twiddle_(n) {
  const double s0 = std::sqrt(1.0 / static_cast<double>(n));
  const double sk = std::sqrt(2.0 / static_cast<double>(n));
  for (std::size_t k = 0; k < n; ++k) {
    const double angle = -std::numbers::pi * static_cast<double>(k) / (2.0 * static_cast<double>(n));
    post_twiddle_[k] = (k == 0 ? s0 : sk) * Complex{std::cos(angle), std::sin(angle)};
  }
}

void DctKernel::reserve(Workspace& ws) const { ensure(ws.cplx, n_ + fft_.scratch_size()); }

void DctKernel::forward(std::span<const double> x, std::span<double> y, Workspace& ws) const {
  std::span<Complex> v = std::span<Complex>(ws.cplx).first(n_);
  std::span<Complex> scratch = std::span<Complex>(ws.cplx).subspan(n_, fft_.scratch_size());
  const std::size_t even = (n_ + 1) / 2;
  for (std::size_t k = 0; k < even; ++k) v[k] = x[2 * k];
  for (std::size_t k = 0; k < n_ / 2; ++k) v[n_ - 1 - k] = x[2 * k + 1];
  fft_.forward(v, scratch);
  for (std::size_t k = 0; k < n_; ++k) y[k] = (v[k] * post_twiddle_[k]).real();
}

// DST-I via the odd extension of length 2(n + 1) ------------------------------

Dst1Kernel::Dst1Kernel(std::size_t n)
    : n_(n), fft_(2 * (n + 1)), scale_(std::sqrt(2.0 / static_cast<double>(n + 1))) {}

void Dst1Kernel::reserve(Workspace& ws) const { ensure(ws.cplx, fft_.size() + fft_.scratch_size()); }

void Dst1Kernel::forward(std::span<const double> x, std::span<double> y, Workspace& ws) const {
  const std::size_t m = fft_.size();
  std::span<Complex> buf = std::span<Complex>(ws.cplx).first(m);
  std::span<Complex> scratch = std::span<Complex>(ws.cplx).subspan(m, fft_.scratch_size());
  buf[0] = 0.0;
  buf[n_ + 1] = 0.0;
  for (std::size_t j = 0; j < n_; ++j) {
    buf[j + 1] = x[j];
    buf[m - 1 - j] = -x[j];
  }
  fft_.forward(buf, scratch);
  // FFT of the odd extension is -2i * sum_j x_j sin(pi k (j+1) / (n+1)).
  for (std::size_t k = 0; k < n_; ++k) y[k] = -0.5 * buf[k + 1].imag() * scale_;
}

// Hartley: cas = cos + sin, so H = Re(F) - Im(F) ------------------------------

DhtKernel::DhtKernel(std::size_t n) : n_(n), fft_(n), scale_(1.0 / std::sqrt(static_cast<double>(n))) {}

void DhtKernel::reserve(Workspace& ws) const { ensure(ws.cplx, n_ + fft_.scratch_size()); }

void DhtKernel::forward(std::span<const double> x, std::span<double> y, Workspace& ws) const {
  std::span<Complex> v = std::span<Complex>(ws.cplx).first(n_);
  std::span<Complex> scratch = std::span<Complex>(ws.cplx).subspan(n_, fft_.scratch_size());
  for (std::size_t k = 0; k < n_; ++k) v[k] = x[k];
  fft_.forward(v, scratch);
  for (std::size_t k = 0; k < n_; ++k) y[k] = (v[k].real() - v[k].imag()) * scale_;
}

// Periodic wavelet cascade ----------------------------------------------------

WaveletKernel::WaveletKernel(FilterBank bank, std::size_t n, std::size_t levels) : bank_(bank), n_(n) {
  lengths_.reserve(levels + 1);
  lengths_.push_back(n);
  for (std::size_t l = 0; l < levels; ++l) {
    const std::size_t len = lengths_.back();
    lengths_.push_back(len / 2 + (len % 2));
  }
}

void WaveletKernel::reserve(Workspace& ws) const { ensure(ws.real, 2 * n_); }

void WaveletKernel::forward(std::span<const double> x, std::span<double> y, Workspace& ws) const {
  std::span<double> cur = std::span<double>(ws.real).first(n_);
  std::span<double> next = std::span<double>(ws.real).subspan(n_, n_);
  std::copy(x.begin(), x.end(), cur.begin());

  const auto lo = bank_.analysis_lo;
  const auto hi = bank_.analysis_hi;
  const std::size_t taps = lo.size();

  for (std::size_t level = 0; level + 1 < lengths_.size(); ++level) {
    const std::size_t len = lengths_[level];
    const std::size_t even = len - (len % 2);
    const std::size_t half = even / 2;
    const std::size_t approx_len = lengths_[level + 1];
    std::span<double> detail = y.subspan(approx_len, half);

    for (std::size_t k = 0; k < half; ++k) {
      double a = 0.0;
      double d = 0.0;
      const std::size_t start = 2 * k;
      if (start + taps <= even) {
        for (std::size_t m = 0; m < taps; ++m) {
          a += lo[m] * cur[start + m];
          d += hi[m] * cur[start + m];
        }
      } else {
        for (std::size_t m = 0; m < taps; ++m) {
          const double v = cur[(start + m) % even];
          a += lo[m] * v;
          d += hi[m] * v;
        }
      }
      next[k] = a;
      detail[k] = d;
    }
    if (len % 2 != 0) next[half] = cur[len - 1];
    std::swap(cur, next);
  }
  std::copy_n(cur.begin(), lengths_.back(), y.begin());
}

void WaveletKernel::inverse(std::span<const double> coeffs, std::span<double> x) const {
  std::vector<double> approx(coeffs.begin(), coeffs.begin() + static_cast<std::ptrdiff_t>(lengths_.back()));
  std::vector<double> rebuilt;
  const auto lo = bank_.synthesis_lo;
  const auto hi = bank_.synthesis_hi;
  const std::size_t taps = lo.size();

  for (std::size_t level = lengths_.size() - 1; level-- > 0;) {
    const std::size_t len = lengths_[level];
    const std::size_t even = len - (len % 2);
    const std::size_t half = even / 2;
    const std::size_t approx_len = lengths_[level + 1];
    const auto detail = coeffs.subspan(approx_len, half);

    rebuilt.assign(len, 0.0);
    for (std::size_t k = 0; k < half; ++k) {
      for (std::size_t m = 0; m < taps; ++m) {
        rebuilt[(2 * k + m) % even] += approx[k] * lo[m] + detail[k] * hi[m];
      }
    }
    if (len % 2 != 0) rebuilt[len - 1] = approx[half];
    approx.swap(rebuilt);
  }
  std::copy(approx.begin(), approx.end(), x.begin());
}

// Dense ------------------------------------------------------------------------

void DenseKernel::forward(std::span<const double> x, std::span<double> y, Workspace&) const {
  Eigen::Map<const Vector> xv(x.data(), static_cast<Eigen::Index>(x.size()));
  Eigen::Map<Vector> yv(y.data(), static_cast<Eigen::Index>(y.size()));
  yv.noalias() = w_ * xv;
}

}  // namespace dtssfn::detail
