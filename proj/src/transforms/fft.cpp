#include "fft.hpp"

#include <cassert>
#include <cmath>
#include <numbers>

namespace dtssfn::detail {

bool is_power_of_two(std::size_t n) { return n > 0 && (n & (n - 1)) == 0; }

std::size_t next_power_of_two(std::size_t n) {
  std::size_t p = 1;
  while (p < n) p <<= 1;
  return p;
}

namespace {

// exp(-2 pi i num / den) with the angle reduced exactly before the trig call.
Complex unit_root(std::size_t num, std::size_t den) {
  const double angle = -2.0 * std::numbers::pi * static_cast<double>(num % den) / static_cast<double>(den);
  return {std::cos(angle), std::sin(angle)};
}

}  // namespace

Fft::Radix2::Radix2(std::size_t size) : n(size), bitrev(size), twiddle(size / 2) {
  std::size_t bits = 0;
  while ((std::size_t{1} << bits) < n) ++bits;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t r = 0;
    for (std::size_t b = 0; b < bits; ++b) {
      if (i & (std::size_t{1} << b)) r |= std::size_t{1} << (bits - 1 - b);
    }
    bitrev[i] = r;
  }
  for (std::size_t k = 0; k < n / 2; ++k) twiddle[k] = unit_root(k, n);
}

void Fft::Radix2::run(std::span<Complex> a) const {
  for (std::size_t i = 0; i < n; ++i) {
    if (i < bitrev[i]) std::swap(a[i], a[bitrev[i]]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    const std::size_t stride = n / len;
    for (std::size_t start = 0; start < n; start += len) {
      for (std::size_t k = 0; k < half; ++k) {
        const Complex w = twiddle[k * stride];
        const Complex u = a[start + k];
        const Complex v = a[start + k + half] * w;
        a[start + k] = u + v;
        a[start + k + half] = u - v;
      }
    }
  }
}

Fft::Fft(std::size_t n) : n_(n) {
  assert(n >= 1);
  if (is_power_of_two(n)) {
    direct_ = std::make_unique<Radix2>(n);
    return;
  }
  const std::size_t m = next_power_of_two(2 * n - 1);
  conv_ = std::make_unique<Radix2>(m);
  chirp_.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    // k^2 mod 2n keeps the angle argument small and exact.
    chirp_[k] = unit_root((k * k) % (2 * n), 2 * n);
  }
  chirp_filter_.assign(m, Complex{});
  chirp_filter_[0] = std::conj(chirp_[0]);
  for (std::size_t k = 1; k < n; ++k) {
    chirp_filter_[k] = std::conj(chirp_[k]);
    chirp_filter_[m - k] = std::conj(chirp_[k]);
  }
  conv_->run(chirp_filter_);
  const double scale = 1.0 / static_cast<double>(m);
  for (auto& c : chirp_filter_) c *= scale;
}

Fft::~Fft() = default;
Fft::Fft(Fft&&) noexcept = default;
Fft& Fft::operator=(Fft&&) noexcept = default;

std::size_t Fft::scratch_size() const { return conv_ ? conv_->n : 0; }

void Fft::forward(std::span<Complex> data, std::span<Complex> scratch) const {
  assert(data.size() == n_);
  if (direct_) {
    direct_->run(data);
    return;
  }
  const std::size_t m = conv_->n;
  assert(scratch.size() >= m);
  std::span<Complex> buf = scratch.first(m);
  for (std::size_t k = 0; k < n_; ++k) buf[k] = data[k] * chirp_[k];
  for (std::size_t k = n_; k < m; ++k) buf[k] = Complex{};
  conv_->run(buf);
  for (std::size_t k = 0; k < m; ++k) buf[k] *= chirp_filter_[k];
  // Inverse FFT via conjugation; the 1/M factor is folded into chirp_filter_.
  for (auto& c : buf) c = std::conj(c);
  conv_->run(buf);
  for (std::size_t k = 0; k < n_; ++k) data[k] = std::conj(buf[k]) * chirp_[k];
}

}  // namespace dtssfn::detail
