#pragma once

#include "dtssfn/transforms.hpp"

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dtssfn {

enum class SelectionMethod { Method1, Method2, Fixed, Random };

/// How the transform of each new layer is chosen.
struct MethodSpec {
  SelectionMethod method = SelectionMethod::Method2;
  TransformKind fixed{};     // Fixed only
  std::uint64_t seed = 0;    // Random only; layer l uses RANDOM(mix_seed(seed, l))

  /// "1", "2", "fixed:<kind>" or "random:<seed>".
  static MethodSpec parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const MethodSpec&, const MethodSpec&) = default;
};

enum class Part2Activation { Relu, Linear };

/// Starting point of the per-layer ADMM: the zero matrix, or the matrix that
/// passes the previous layer's prediction through unchanged.
enum class AdmmStart { Zero, Lfp };

/// Input feature preprocessing, fitted on the training set and replayed at inference.
enum class PreprocessMode { None, UnitNorm, ZScore };

std::string to_string(Part2Activation a);
std::string to_string(PreprocessMode m);
std::string to_string(AdmmStart s);
AdmmStart parse_admm_start(std::string_view text);
Part2Activation parse_part2_activation(std::string_view text);
PreprocessMode parse_preprocess_mode(std::string_view text);

struct HyperParams {
  double lambda0 = 1.0;       // ridge weight for the layer-0 classifier
  double mu = 1e3;            // ADMM penalty parameter
  double alpha = 2.0;         // ball radius factor, epsilon = 2 alpha Q
  std::size_t k_max = 100;    // ADMM iterations per layer
  double eta_layer = 0.1;     // stop when relative cost improvement falls below
  double eta_var = 1e-7;      // prune transform nodes with variance below
  std::size_t l_max = 20;     // maximum hidden layers
  double gamma = 0.8;         // cumulative singular value threshold (Method 2)
  std::vector<TransformKind> bag = bag_default();
  MethodSpec method{};
  Part2Activation part2_activation = Part2Activation::Relu;
  PreprocessMode preprocess = PreprocessMode::UnitNorm;
  AdmmStart admm_start = AdmmStart::Zero;

  /// Throws ConfigError naming the first out-of-range field.
  void validate() const;
};

}  // namespace dtssfn
