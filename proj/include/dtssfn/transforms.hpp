#pragma once

// Deterministic transforms used as the untrained half of each hidden layer.
//
// Every kind has two independent routes:
//   * apply_fast       O(N log N) or O(N) kernels (butterflies, FFTs, filter banks)
//   * transform_matrix the closed-form dense matrix, built from the definition
// apply_naive multiplies by the dense matrix and is the oracle for apply_fast.
//
// Conventions:
//   * DCT-II, DST-I, DHT and both Walsh-Hadamard orders are orthonormal.
//   * Walsh-Hadamard and Haar inputs are zero-padded to the next power of two.
//   * Wavelets use periodic extension and floor(log2 N) levels. A level whose
//     input length is odd transforms the leading even part and carries the
//     last sample into the approximation band, so every level preserves the
//     coefficient count. Output is [approx_L, detail_L, ..., detail_1].

#include "dtssfn/linalg.hpp"

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace dtssfn {

enum class TransformTag : std::uint8_t {
  Dct2,
  Dst1,
  FwhtNatural,
  FwhtSequency,
  Dht,
  Haar,
  Db4,
  Db20,
  Sym2,
  Coif1,
  Bior13,
  Rbior11,
  Random,
};

struct TransformKind {
  TransformTag tag = TransformTag::Dct2;
  std::uint64_t seed = 0;  // only meaningful for Random

  static constexpr TransformKind random(std::uint64_t s) { return {TransformTag::Random, s}; }

  friend constexpr bool operator==(const TransformKind& a, const TransformKind& b) {
    return a.tag == b.tag && (a.tag != TransformTag::Random || a.seed == b.seed);
  }
};

/// Short display name: DCT, DST, FWHT1, FWHT2, DHT, Haar, DB4, DB20, sym2,
/// coif1, bior1.3, rbior1.1, or random:<seed>.
std::string to_string(TransformKind kind);

/// Accepts the display names, the long tags (DCT2, FWHT_NATURAL, ...) and
/// random:<seed>, case-insensitively.
std::optional<TransformKind> parse_transform_kind(std::string_view text);

bool is_wavelet(TransformTag tag);
bool is_orthonormal(TransformTag tag);
bool is_biorthogonal(TransformTag tag);

/// The twelve deterministic kinds, in tie-break order.
std::vector<TransformKind> bag_default();

namespace detail {
class Kernel;
}

class TransformPlan {
 public:
  TransformKind kind() const { return kind_; }
  std::size_t input_dim() const { return input_dim_; }
  std::size_t padded_dim() const { return padded_dim_; }
  std::size_t output_dim() const { return output_dim_; }
  std::size_t wavelet_levels() const { return wavelet_levels_; }

  const detail::Kernel& kernel() const { return *kernel_; }

 private:
  friend TransformPlan plan(TransformKind, std::size_t);

  TransformKind kind_;
  std::size_t input_dim_ = 0;
  std::size_t padded_dim_ = 0;
  std::size_t output_dim_ = 0;
  std::size_t wavelet_levels_ = 0;
  std::shared_ptr<const detail::Kernel> kernel_;
};

/// Throws DimensionError when input_dim < 2.
TransformPlan plan(TransformKind kind, std::size_t input_dim);

Vector apply_fast(const TransformPlan& p, std::span<const double> x);

/// Column-wise apply_fast; columns are independent and processed in parallel.
Matrix apply_fast_columns(const TransformPlan& p, const Eigen::Ref<const Matrix>& x);

Vector apply_naive(const TransformPlan& p, std::span<const double> x);

/// Dense output_dim x padded_dim matrix built from the closed-form definition.
Matrix transform_matrix(TransformKind kind, std::size_t n);

/// Inverse of a wavelet or Haar plan through the synthesis filter bank.
/// Throws DimensionError for non-wavelet kinds.
Vector wavelet_synthesize(const TransformPlan& p, std::span<const double> coeffs);

}  // namespace dtssfn
