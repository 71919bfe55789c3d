#include "dtssfn/transforms.hpp"

#include "dtssfn/error.hpp"
#include "kernels.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <string>

namespace dtssfn {

namespace {

struct NameEntry {
  TransformTag tag;
  std::string_view display;
  std::string_view long_name;
};

constexpr std::array<NameEntry, 12> k_names = {{
    {TransformTag::Dct2, "DCT", "DCT2"},
    {TransformTag::Dst1, "DST", "DST1"},
    {TransformTag::FwhtNatural, "FWHT1", "FWHT_NATURAL"},
    {TransformTag::FwhtSequency, "FWHT2", "FWHT_SEQUENCY"},
    {TransformTag::Dht, "DHT", "DHT"},
    {TransformTag::Haar, "Haar", "HAAR"},
    {TransformTag::Db4, "DB4", "DB4"},
    {TransformTag::Db20, "DB20", "DB20"},
    {TransformTag::Sym2, "sym2", "SYM2"},
    {TransformTag::Coif1, "coif1", "COIF1"},
    {TransformTag::Bior13, "bior1.3", "BIOR1_3"},
    {TransformTag::Rbior11, "rbior1.1", "RBIOR1_1"},
}};

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

std::size_t floor_log2(std::size_t n) {
  std::size_t l = 0;
  while ((n >> (l + 1)) != 0) ++l;
  return l;
}

}  // namespace

std::string to_string(TransformKind kind) {
  if (kind.tag == TransformTag::Random) return "random:" + std::to_string(kind.seed);
  for (const auto& e : k_names) {
    if (e.tag == kind.tag) return std::string(e.display);
  }
  return "unknown";
}

std::optional<TransformKind> parse_transform_kind(std::string_view text) {
  for (const auto& e : k_names) {
    if (iequals(text, e.display) || iequals(text, e.long_name)) return TransformKind{e.tag, 0};
  }
  constexpr std::string_view prefix = "random:";
  if (text.size() > prefix.size() && iequals(text.substr(0, prefix.size()), prefix)) {
    const auto digits = text.substr(prefix.size());
    std::uint64_t seed = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (ec == std::errc{} && ptr == digits.data() + digits.size()) return TransformKind::random(seed);
  }
  return std::nullopt;
}

bool is_wavelet(TransformTag tag) {
  switch (tag) {
    case TransformTag::Haar:
    case TransformTag::Db4:
    case TransformTag::Db20:
    case TransformTag::Sym2:
    case TransformTag::Coif1:
    case TransformTag::Bior13:
    case TransformTag::Rbior11:
      return true;
    default:
      return false;
  }
}

bool is_orthonormal(TransformTag tag) {
  switch (tag) {
    case TransformTag::Dct2:
    case TransformTag::Dst1:
    case TransformTag::FwhtNatural:
    case TransformTag::FwhtSequency:
    case TransformTag::Dht:
    case TransformTag::Haar:
    case TransformTag::Db4:
    case TransformTag::Db20:
    case TransformTag::Sym2:
    case TransformTag::Coif1:
      return true;
    default:
      return false;
  }
}

bool is_biorthogonal(TransformTag tag) { return tag == TransformTag::Bior13 || tag == TransformTag::Rbior11; }

std::vector<TransformKind> bag_default() {
  std::vector<TransformKind> bag;
  bag.reserve(k_names.size());
  for (const auto& e : k_names) bag.push_back({e.tag, 0});
  return bag;
}

TransformPlan plan(TransformKind kind, std::size_t input_dim) {
  if (input_dim < 2) {
    throw DimensionError("transform plan needs input_dim >= 2, got " + std::to_string(input_dim));
  }
  TransformPlan p;
  p.kind_ = kind;
  p.input_dim_ = input_dim;
  const bool pow2 = kind.tag == TransformTag::FwhtNatural || kind.tag == TransformTag::FwhtSequency ||
                    kind.tag == TransformTag::Haar;
  p.padded_dim_ = pow2 ? detail::next_power_of_two(input_dim) : input_dim;
  p.output_dim_ = p.padded_dim_;
  p.wavelet_levels_ = is_wavelet(kind.tag) ? floor_log2(p.padded_dim_) : 0;

  const std::size_t n = p.padded_dim_;
  switch (kind.tag) {
    case TransformTag::Dct2:
      p.kernel_ = std::make_shared<detail::DctKernel>(n);
      break;
    case TransformTag::Dst1:
      p.kernel_ = std::make_shared<detail::Dst1Kernel>(n);
      break;
    case TransformTag::FwhtNatural:
    case TransformTag::FwhtSequency:
      p.kernel_ = std::make_shared<detail::FwhtKernel>(n, kind.tag == TransformTag::FwhtSequency);
      break;
    case TransformTag::Dht:
      p.kernel_ = std::make_shared<detail::DhtKernel>(n);
      break;
    case TransformTag::Random:
      p.kernel_ = std::make_shared<detail::DenseKernel>(detail::random_matrix(kind.seed, n));
      break;
    default:
      p.kernel_ = std::make_shared<detail::WaveletKernel>(detail::filter_bank(kind.tag), n, p.wavelet_levels_);
      break;
  }
  return p;
}

namespace {

void check_input(const TransformPlan& p, std::span<const double> x) {
  if (x.size() != p.input_dim()) {
    throw DimensionError(to_string(p.kind()) + ": expected input of length " + std::to_string(p.input_dim()) +
                         ", got " + std::to_string(x.size()));
  }
  for (double v : x) {
    if (!std::isfinite(v)) throw NumericError(to_string(p.kind()) + ": non-finite input");
  }
}

}  // namespace

Vector apply_fast(const TransformPlan& p, std::span<const double> x) {
  check_input(p, x);
  std::vector<double> padded(p.padded_dim(), 0.0);
  std::copy(x.begin(), x.end(), padded.begin());
  Vector y(static_cast<Eigen::Index>(p.output_dim()));
  detail::Workspace ws;
  p.kernel().reserve(ws);
  p.kernel().forward(padded, std::span<double>(y.data(), p.output_dim()), ws);
  return y;
}

Matrix apply_fast_columns(const TransformPlan& p, const Eigen::Ref<const Matrix>& x) {
  if (static_cast<std::size_t>(x.rows()) != p.input_dim()) {
    throw DimensionError(to_string(p.kind()) + ": expected " + std::to_string(p.input_dim()) + " rows, got " +
                         std::to_string(x.rows()));
  }
  require_finite(x, to_string(p.kind()) + " input");
  const Eigen::Index cols = x.cols();
  Matrix y(static_cast<Eigen::Index>(p.output_dim()), cols);
  const auto& kernel = p.kernel();

  if (const auto* dense = dynamic_cast<const detail::DenseKernel*>(&kernel)) {
    y.noalias() = dense->matrix() * x;
    return y;
  }

#pragma omp parallel
  {
    detail::Workspace ws;
    kernel.reserve(ws);
    std::vector<double> padded(p.padded_dim(), 0.0);
#pragma omp for schedule(static)
    for (Eigen::Index c = 0; c < cols; ++c) {
      for (Eigen::Index r = 0; r < x.rows(); ++r) padded[static_cast<std::size_t>(r)] = x(r, c);
      kernel.forward(padded, std::span<double>(y.col(c).data(), p.output_dim()), ws);
    }
  }
  return y;
}

Vector apply_naive(const TransformPlan& p, std::span<const double> x) {
  check_input(p, x);
  const Matrix w = transform_matrix(p.kind(), p.input_dim());
  Vector padded = Vector::Zero(static_cast<Eigen::Index>(p.padded_dim()));
  for (std::size_t i = 0; i < x.size(); ++i) padded[static_cast<Eigen::Index>(i)] = x[i];
  return w * padded;
}

Vector wavelet_synthesize(const TransformPlan& p, std::span<const double> coeffs) {
  const auto* wavelet = dynamic_cast<const detail::WaveletKernel*>(&p.kernel());
  if (wavelet == nullptr) throw DimensionError(to_string(p.kind()) + " has no synthesis filter bank");
  if (coeffs.size() != p.output_dim()) {
    throw DimensionError("wavelet_synthesize: expected " + std::to_string(p.output_dim()) + " coefficients");
  }
  Vector x(static_cast<Eigen::Index>(p.padded_dim()));
  wavelet->inverse(coeffs, std::span<double>(x.data(), p.padded_dim()));
  return x;
}

}  // namespace dtssfn
