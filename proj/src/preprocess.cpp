#include "dtssfn/preprocess.hpp"

#include "dtssfn/error.hpp"

#include <cmath>
#include <string>

namespace dtssfn {

UnitNormResult unit_norm_samples(const Matrix& x) {
  UnitNormResult out{x, std::vector<bool>(static_cast<std::size_t>(x.cols()), false)};
  for (Eigen::Index c = 0; c < x.cols(); ++c) {
    const double norm = x.col(c).norm();
    if (norm == 0.0) {
      out.zero_columns[static_cast<std::size_t>(c)] = true;
    } else {
      out.x.col(c) /= norm;
    }
  }
  return out;
}

Preprocessor Preprocessor::fit(const Matrix& x, PreprocessMode mode) {
  require_finite(x, "preprocessor input");
  Preprocessor p;
  p.mode = mode;
  if (mode == PreprocessMode::ZScore) {
    if (x.cols() < 1) throw InsufficientSamplesError("zscore: no samples");
    const double j = static_cast<double>(x.cols());
    p.mean = x.rowwise().sum() / j;
    p.scale.resize(x.rows());
    for (Eigen::Index r = 0; r < x.rows(); ++r) {
      const double sd = std::sqrt((x.row(r).array() - p.mean[r]).square().sum() / j);
      p.scale[r] = sd > 0.0 ? sd : 1.0;
    }
  }
  return p;
}

Matrix Preprocessor::apply(const Matrix& x) const {
  require_finite(x, "preprocessor input");
  switch (mode) {
    case PreprocessMode::None: return x;
    case PreprocessMode::UnitNorm: return unit_norm_samples(x).x;
    case PreprocessMode::ZScore: {
      if (x.rows() != mean.size()) {
        throw DimensionError("zscore: expected " + std::to_string(mean.size()) + " features, got " +
                             std::to_string(x.rows()));
      }
      Matrix out = x.colwise() - mean;
      out.array().colwise() /= scale.array();
      return out;
    }
  }
  return x;
}

}  // namespace dtssfn
