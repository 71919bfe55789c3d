// Closed-form transform matrices. Nothing here calls the fast kernels: each
// matrix is written down from its textbook definition so it can serve as an
// independent oracle.

#include "dtssfn/transforms.hpp"

#include "kernels.hpp"
#include "wavelet_filters.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <numeric>

namespace dtssfn {

namespace {

using Index = Eigen::Index;

Matrix dct2_matrix(std::size_t n) {
  Matrix w(n, n);
  const double dn = static_cast<double>(n);
  for (std::size_t k = 0; k < n; ++k) {
    const double scale = k == 0 ? std::sqrt(1.0 / dn) : std::sqrt(2.0 / dn);
    for (std::size_t j = 0; j < n; ++j) {
      // cos(pi (2j+1) k / 2n), argument reduced modulo 4n.
      const std::size_t num = ((2 * j + 1) * k) % (4 * n);
      w(static_cast<Index>(k), static_cast<Index>(j)) =
          scale * std::cos(std::numbers::pi * static_cast<double>(num) / (2.0 * dn));
    }
  }
  return w;
}

Matrix dst1_matrix(std::size_t n) {
  Matrix w(n, n);
  const double dn1 = static_cast<double>(n + 1);
  const double scale = std::sqrt(2.0 / dn1);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const std::size_t num = ((k + 1) * (j + 1)) % (2 * (n + 1));
      w(static_cast<Index>(k), static_cast<Index>(j)) = scale * std::sin(std::numbers::pi * static_cast<double>(num) / dn1);
    }
  }
  return w;
}

Matrix dht_matrix(std::size_t n) {
  Matrix w(n, n);
  const double dn = static_cast<double>(n);
  const double scale = 1.0 / std::sqrt(dn);
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t j = 0; j < n; ++j) {
      const double angle = 2.0 * std::numbers::pi * static_cast<double>((k * j) % n) / dn;
      w(static_cast<Index>(k), static_cast<Index>(j)) = scale * (std::cos(angle) + std::sin(angle));
    }
  }
  return w;
}

Matrix hadamard_natural(std::size_t n) {
  Matrix w(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) {
      w(static_cast<Index>(r), static_cast<Index>(c)) = (std::popcount(r & c) % 2 == 0) ? scale : -scale;
    }
  }
  return w;
}

std::size_t sign_changes(const Eigen::Ref<const Eigen::RowVectorXd>& row) {
  std::size_t changes = 0;
  for (Index i = 1; i < row.size(); ++i) {
    if ((row[i] > 0) != (row[i - 1] > 0)) ++changes;
  }
  return changes;
}

Matrix hadamard_sequency(std::size_t n) {
  const Matrix natural = hadamard_natural(n);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::size_t> changes(n);
  for (std::size_t r = 0; r < n; ++r) changes[r] = sign_changes(natural.row(static_cast<Index>(r)));
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return changes[a] < changes[b]; });
  Matrix w(n, n);
  for (std::size_t r = 0; r < n; ++r) w.row(static_cast<Index>(r)) = natural.row(static_cast<Index>(order[r]));
  return w;
}

// Orthonormal Haar basis for n = 2^p in [scaling, coarse ... fine detail] order.
Matrix haar_matrix(std::size_t n) {
  Matrix w = Matrix::Zero(n, n);
  w.row(0).setConstant(1.0 / std::sqrt(static_cast<double>(n)));
  for (std::size_t count = 1; count < n; count *= 2) {
    const std::size_t support = n / count;
    const double v = 1.0 / std::sqrt(static_cast<double>(support));
    for (std::size_t q = 0; q < count; ++q) {
      const auto row = static_cast<Index>(count + q);
      for (std::size_t j = 0; j < support; ++j) {
        w(row, static_cast<Index>(q * support + j)) = j < support / 2 ? v : -v;
      }
    }
  }
  return w;
}

// One analysis level over a length-`len` signal as an explicit len x len
// matrix: rows [approx (+carried sample) ; detail].
Matrix wavelet_level_matrix(const detail::FilterBank& bank, std::size_t len) {
  const std::size_t even = len - len % 2;
  const std::size_t half = even / 2;
  const std::size_t approx_rows = half + len % 2;
  Matrix a = Matrix::Zero(len, len);
  for (std::size_t k = 0; k < half; ++k) {
    for (std::size_t m = 0; m < bank.analysis_lo.size(); ++m) {
      const auto col = static_cast<Index>((2 * k + m) % even);
      a(static_cast<Index>(k), col) += bank.analysis_lo[m];
      a(static_cast<Index>(approx_rows + k), col) += bank.analysis_hi[m];
    }
  }
  if (len % 2 != 0) a(static_cast<Index>(half), static_cast<Index>(len - 1)) = 1.0;
  return a;
}

Matrix wavelet_matrix(TransformTag tag, std::size_t n, std::size_t levels) {
  const auto bank = detail::filter_bank(tag);
  Matrix w = Matrix::Identity(n, n);
  std::size_t len = n;
  for (std::size_t l = 0; l < levels; ++l) {
    // Only the leading `len` rows (the current approximation band) change.
    const Matrix top = wavelet_level_matrix(bank, len) * w.topRows(len);
    w.topRows(len) = top;
    len = len / 2 + len % 2;
  }
  return w;
}

}  // namespace

Matrix transform_matrix(TransformKind kind, std::size_t n) {
  const TransformPlan p = plan(kind, n);
  const std::size_t size = p.padded_dim();
  switch (kind.tag) {
    case TransformTag::Dct2: return dct2_matrix(size);
    case TransformTag::Dst1: return dst1_matrix(size);
    case TransformTag::FwhtNatural: return hadamard_natural(size);
    case TransformTag::FwhtSequency: return hadamard_sequency(size);
    case TransformTag::Dht: return dht_matrix(size);
    case TransformTag::Haar: return haar_matrix(size);
    case TransformTag::Random: return detail::random_matrix(kind.seed, size);
    default: return wavelet_matrix(kind.tag, size, p.wavelet_levels());
  }
}

}  // namespace dtssfn
