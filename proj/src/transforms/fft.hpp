#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <vector>

namespace dtssfn::detail {

using Complex = std::complex<double>;

/// Forward DFT X[k] = sum_n x[n] exp(-2 pi i k n / N) for any N >= 1.
/// Powers of two use an iterative radix-2 butterfly; other lengths go
/// through Bluestein's chirp-z reduction to a power-of-two convolution.
class Fft {
 public:
  explicit Fft(std::size_t n);
  ~Fft();
  Fft(Fft&&) noexcept;
  Fft& operator=(Fft&&) noexcept;

  std::size_t size() const { return n_; }

  /// In-place transform. `scratch` must hold scratch_size() elements.
  void forward(std::span<Complex> data, std::span<Complex> scratch) const;
  std::size_t scratch_size() const;

 private:
  struct Radix2 {
    std::size_t n = 0;
    std::vector<std::size_t> bitrev;
    std::vector<Complex> twiddle;  // exp(-2 pi i k / n), k < n/2
    explicit Radix2(std::size_t size);
    void run(std::span<Complex> a) const;
  };

  std::size_t n_;
  std::unique_ptr<Radix2> direct_;
  // Bluestein state
  std::unique_ptr<Radix2> conv_;
  std::vector<Complex> chirp_;          // exp(-i pi k^2 / n)
  std::vector<Complex> chirp_filter_;   // FFT of the conjugate chirp, scaled 1/M
};

bool is_power_of_two(std::size_t n);
std::size_t next_power_of_two(std::size_t n);

}  // namespace dtssfn::detail
