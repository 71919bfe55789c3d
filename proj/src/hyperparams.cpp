#include "dtssfn/hyperparams.hpp"

#include "dtssfn/error.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>

namespace dtssfn {

namespace {

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) { return std::tolower(c); });
  return out;
}

}  // namespace

MethodSpec MethodSpec::parse(std::string_view text) {
  const std::string t = lower(text);
  MethodSpec spec;
  if (t == "1" || t == "method1") {
    spec.method = SelectionMethod::Method1;
    return spec;
  }
  if (t == "2" || t == "method2") {
    spec.method = SelectionMethod::Method2;
    return spec;
  }
  if (t.starts_with("fixed:")) {
    const auto kind = parse_transform_kind(text.substr(6));
    if (!kind) throw ConfigError("unknown transform in method '" + std::string(text) + "'");
    spec.method = SelectionMethod::Fixed;
    spec.fixed = *kind;
    return spec;
  }
  if (t.starts_with("random:")) {
    const std::string_view digits = text.substr(7);
    std::uint64_t seed = 0;
    const auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), seed);
    if (digits.empty() || ec != std::errc{} || ptr != digits.data() + digits.size()) {
      throw ConfigError("bad seed in method '" + std::string(text) + "'");
    }
    spec.method = SelectionMethod::Random;
    spec.seed = seed;
    return spec;
  }
  throw ConfigError("method must be 1, 2, fixed:<kind> or random:<seed>, got '" + std::string(text) + "'");
}

std::string MethodSpec::to_string() const {
  switch (method) {
    case SelectionMethod::Method1: return "1";
    case SelectionMethod::Method2: return "2";
    case SelectionMethod::Fixed: return "fixed:" + dtssfn::to_string(fixed);
    case SelectionMethod::Random: return "random:" + std::to_string(seed);
  }
  return "?";
}

std::string to_string(Part2Activation a) { return a == Part2Activation::Relu ? "relu" : "linear"; }

std::string to_string(PreprocessMode m) {
  switch (m) {
    case PreprocessMode::None: return "none";
    case PreprocessMode::UnitNorm: return "unit";
    case PreprocessMode::ZScore: return "zscore";
  }
  return "?";
}

std::string to_string(AdmmStart s) { return s == AdmmStart::Zero ? "zero" : "lfp"; }

AdmmStart parse_admm_start(std::string_view text) {
  const std::string t = lower(text);
  if (t == "zero") return AdmmStart::Zero;
  if (t == "lfp") return AdmmStart::Lfp;
  throw ConfigError("admm start must be zero or lfp, got '" + std::string(text) + "'");
}

Part2Activation parse_part2_activation(std::string_view text) {
  const std::string t = lower(text);
  if (t == "relu") return Part2Activation::Relu;
  if (t == "linear") return Part2Activation::Linear;
  throw ConfigError("part2 activation must be relu or linear, got '" + std::string(text) + "'");
}

PreprocessMode parse_preprocess_mode(std::string_view text) {
  const std::string t = lower(text);
  if (t == "none") return PreprocessMode::None;
  if (t == "unit" || t == "unit_norm" || t == "unitnorm") return PreprocessMode::UnitNorm;
  if (t == "zscore" || t == "z-score") return PreprocessMode::ZScore;
  throw ConfigError("preprocess must be none, unit or zscore, got '" + std::string(text) + "'");
}

void HyperParams::validate() const {
  auto fail = [](const std::string& what) { throw ConfigError("hyperparameter out of range: " + what); };
  if (!(std::isfinite(lambda0) && lambda0 >= 0.0)) fail("lambda0 must be >= 0");
  if (!(std::isfinite(mu) && mu > 0.0)) fail("mu must be > 0");
  if (!(std::isfinite(alpha) && alpha >= 1.0)) fail("alpha must be >= 1");
  if (k_max == 0) fail("k_max must be >= 1");
  if (!(eta_layer > 0.0) || std::isnan(eta_layer)) fail("eta_layer must be > 0");
  if (!(std::isfinite(eta_var) && eta_var > 0.0)) fail("eta_var must be > 0");
  if (l_max == 0) fail("l_max must be >= 1");
  if (!(gamma >= 0.0 && gamma <= 1.0)) fail("gamma must lie in [0, 1]");
  if (bag.empty()) fail("bag must not be empty");
}

}  // namespace dtssfn
