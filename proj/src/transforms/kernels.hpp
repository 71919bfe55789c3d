#pragma once

#include "dtssfn/transforms.hpp"
#include "fft.hpp"
#include "wavelet_filters.hpp"

#include <complex>
#include <span>
#include <vector>

namespace dtssfn::detail {

struct Workspace {
  std::vector<double> real;
  std::vector<Complex> cplx;
};

class Kernel {
 public:
  virtual ~Kernel() = default;

  /// Sizes `ws` for forward(); cheap when already large enough.
  virtual void reserve(Workspace& ws) const = 0;

  /// `x` is already zero-padded to padded_dim; `y` has output_dim entries.
  virtual void forward(std::span<const double> x, std::span<double> y, Workspace& ws) const = 0;
};

class FwhtKernel final : public Kernel {
 public:
  FwhtKernel(std::size_t n, bool sequency);
  void reserve(Workspace& ws) const override;
  void forward(std::span<const double> x, std::span<double> y, Workspace& ws) const override;

 private:
  std::size_t n_;
  double scale_;
  std::vector<std::size_t> sequency_to_natural_;  // empty for natural order
};

class DctKernel final : public Kernel {
 public:
  explicit DctKernel(std::size_t n);
  void reserve(Workspace& ws) const override;
  void forward(std::span<const double> x, std::span<double> y, Workspace& ws) const override;

 private:
  std::size_t n_;
  Fft fft_;
  std::vector<Complex> post_twiddle_;  // scale_k * exp(-i pi k / 2n)
};

class Dst1Kernel final : public Kernel {
 public:
  explicit Dst1Kernel(std::size_t n);
  void reserve(Workspace& ws) const override;
  void forward(std::span<const double> x, std::span<double> y, Workspace& ws) const override;

 private:
  std::size_t n_;
  Fft fft_;  // length 2(n + 1)
  double scale_;
};

class DhtKernel final : public Kernel {
 public:
  explicit DhtKernel(std::size_t n);
  void reserve(Workspace& ws) const override;
  void forward(std::span<const double> x, std::span<double> y, Workspace& ws) const override;

 private:
  std::size_t n_;
  Fft fft_;
  double scale_;
};

class WaveletKernel final : public Kernel {
 public:
  WaveletKernel(FilterBank bank, std::size_t n, std::size_t levels);
  void reserve(Workspace& ws) const override;
  void forward(std::span<const double> x, std::span<double> y, Workspace& ws) const override;
  void inverse(std::span<const double> coeffs, std::span<double> x) const;

  /// Signal length entering each level; lengths_[levels] is the final approximation size.
  const std::vector<std::size_t>& lengths() const { return lengths_; }

 private:
  FilterBank bank_;
  std::size_t n_;
  std::vector<std::size_t> lengths_;
};

class DenseKernel final : public Kernel {
 public:
  explicit DenseKernel(Matrix w) : w_(std::move(w)) {}
  void reserve(Workspace&) const override {}
  void forward(std::span<const double> x, std::span<double> y, Workspace& ws) const override;
  const Matrix& matrix() const { return w_; }

 private:
  Matrix w_;
};

/// Natural Hadamard row index for each sequency index, for length n = 2^p.
std::vector<std::size_t> sequency_permutation(std::size_t n);

/// N(0,1)/sqrt(n) entries in row-major fill order from Rng(seed).
Matrix random_matrix(std::uint64_t seed, std::size_t n);

}  // namespace dtssfn::detail
