#pragma once

#include "dtssfn/hyperparams.hpp"
#include "dtssfn/linalg.hpp"

#include <cstddef>
#include <vector>

namespace dtssfn {

struct UnitNormResult {
  Matrix x;
  std::vector<bool> zero_columns;
};

/// Scales every column to unit Euclidean norm. All-zero columns are left
/// as they are and flagged.
UnitNormResult unit_norm_samples(const Matrix& x);

/// Per-feature preprocessing fitted on training data and replayed on any
/// later input. UnitNorm acts per sample and stores nothing.
struct Preprocessor {
  PreprocessMode mode = PreprocessMode::UnitNorm;
  Vector mean;   // ZScore only
  Vector scale;  // ZScore only; 1 for constant features

  static Preprocessor fit(const Matrix& x, PreprocessMode mode);
  Matrix apply(const Matrix& x) const;
};

}  // namespace dtssfn
