#include "dtssfn/selection.hpp"

#include "dtssfn/error.hpp"
#include "dtssfn/layer.hpp"

#include <algorithm>
#include <cmath>
#include <optional>

namespace dtssfn {

double method1_score(const Matrix& z2) {
  if (z2.rows() == 0) throw DimensionError("method1_score: empty layer");
  if (z2.cols() < 2) throw InsufficientSamplesError("method1_score: need at least 2 samples");
  const double j = static_cast<double>(z2.cols());
  const Vector mean = z2.rowwise().sum() / j;
  Vector sigma(z2.rows());
  for (Eigen::Index r = 0; r < z2.rows(); ++r) {
    sigma[r] = std::sqrt((z2.row(r).array() - mean[r]).square().sum() / j);
  }
  const double m = sigma.mean();
  return std::sqrt((sigma.array() - m).square().sum() / static_cast<double>(sigma.size()));
}

namespace {

// Rows centered and scaled to unit length; zero-variance rows become zero.
Matrix standardize_rows(const Matrix& m) {
  Matrix s = m.colwise() - m.rowwise().mean();
  for (Eigen::Index r = 0; r < s.rows(); ++r) {
    const double norm = s.row(r).norm();
    if (norm > 0.0) {
      s.row(r) /= norm;
    } else {
      s.row(r).setZero();
    }
  }
  return s;
}

Matrix correlation_from_standardized(const Matrix& xs, const Matrix& z2) {
  Matrix r = xs * standardize_rows(z2).transpose();
  // Rounding can push |r| a hair past 1.
  return r.cwiseMax(-1.0).cwiseMin(1.0);
}

}  // namespace

Matrix correlation_matrix(const Matrix& x, const Matrix& z2) {
  if (x.cols() != z2.cols()) throw DimensionError("correlation_matrix: sample counts differ");
  if (x.cols() < 2) throw InsufficientSamplesError("correlation_matrix: need at least 2 samples");
  return correlation_from_standardized(standardize_rows(x), z2);
}

CumulativeSpectrum cumulative_singular(const Matrix& r) {
  require_finite(r, "cumulative_singular");
  const auto k = static_cast<std::size_t>(std::min(r.rows(), r.cols()));
  CumulativeSpectrum out;
  if (k == 0) {
    out.degenerate = true;
    return out;
  }
  const Eigen::BDCSVD<Matrix> svd(r);
  const Vector& s = svd.singularValues();  // descending
  const double total = s.sum();
  out.values.resize(k, 1.0);
  if (!(total > 0.0)) {
    out.degenerate = true;
    return out;
  }
  double running = 0.0;
  for (std::size_t i = 0; i < k; ++i) {
    running += s[static_cast<Eigen::Index>(i)];
    out.values[i] = std::min(1.0, running / total);
  }
  out.values.back() = 1.0;
  return out;
}

Method2Score method2_from_spectrum(const CumulativeSpectrum& spectrum, double gamma) {
  if (!(gamma >= 0.0 && gamma <= 1.0)) throw ConfigError("gamma must lie in [0, 1]");
  const auto& c = spectrum.values;
  if (c.empty()) throw DimensionError("method2: empty spectrum");
  std::size_t idx = c.size();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] >= gamma) {
      idx = i + 1;
      break;
    }
  }
  Method2Score score;
  score.idx = idx;
  score.k = c.size();
  score.sc1 = 100.0 * static_cast<double>(idx) / static_cast<double>(c.size());
  score.sc2 = c[idx - 1];
  return score;
}

Method2Score method2_from_correlation(const Matrix& r, double gamma) {
  return method2_from_spectrum(cumulative_singular(r), gamma);
}

Method2Score method2_score(const Matrix& x, const Matrix& z2, double gamma) {
  return method2_from_correlation(correlation_matrix(x, z2), gamma);
}

std::optional<std::size_t> best_candidate(const std::vector<SelectionScore>& table, bool use_sc2) {
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < table.size(); ++i) {
    const auto& s = table[i];
    if (s.degenerate) continue;
    if (!best) {
      best = i;
      continue;
    }
    const auto& b = table[*best];
    if (s.sc1 < b.sc1 || (use_sc2 && s.sc1 == b.sc1 && s.sc2 > b.sc2)) best = i;
  }
  return best;
}

Selection select_transform(const std::vector<TransformKind>& bag, const Matrix& y_prev, const Matrix& x,
                           const HyperParams& hp) {
  if (bag.empty()) throw ConfigError("select_transform: empty bag");
  const bool method2 = hp.method.method == SelectionMethod::Method2;
  if (!method2 && hp.method.method != SelectionMethod::Method1) {
    throw ConfigError("select_transform: method must be 1 or 2");
  }
  if (method2 && x.cols() != y_prev.cols()) throw DimensionError("select_transform: x and y_prev sample counts differ");

  const Matrix xs = method2 ? standardize_rows(x) : Matrix{};
  Selection result;
  result.table.resize(bag.size());

  // Candidates are independent; the reduction below runs in bag order.
  for (std::size_t i = 0; i < bag.size(); ++i) {
    SelectionScore& s = result.table[i];
    s.kind = bag[i];
    try {
      const Part2Output part2 = part2_forward(bag[i], y_prev, hp.eta_var);
      s.kept_nodes = part2.z.rows();
      if (method2) {
        const auto m2 = method2_from_correlation(correlation_from_standardized(xs, part2.z), hp.gamma);
        s.sc1 = m2.sc1;
        s.sc2 = m2.sc2;
      } else {
        s.sc1 = method1_score(part2.z);
      }
    } catch (const DegenerateLayerError&) {
      s.degenerate = true;
    }
  }

  const auto best = best_candidate(result.table, method2);
  if (!best) throw SelectionImpossibleError("select_transform: every candidate transform pruned all nodes");
  result.chosen = bag[*best];
  return result;
}

}  // namespace dtssfn
