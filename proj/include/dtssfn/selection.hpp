#pragma once

// Unsupervised choice of the deterministic transform for a new layer.
//
// Method 1 scores a candidate by the spread (population standard deviation)
// of its per-node standard deviations. Method 2 correlates the network input
// with the candidate's output, takes the singular values of that Pearson
// matrix and scores by how few of them reach a fraction gamma of the total.
// Lower sc1 wins; Method 2 breaks ties by larger sc2, then bag order.

#include "dtssfn/hyperparams.hpp"
#include "dtssfn/linalg.hpp"
#include "dtssfn/transforms.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace dtssfn {

struct SelectionScore {
  TransformKind kind;
  double sc1 = 0.0;
  double sc2 = 0.0;            // Method 2 only
  std::size_t kept_nodes = 0;
  bool degenerate = false;     // every node pruned; not a candidate
};

/// Throws DimensionError when z2 has no rows, InsufficientSamplesError when J < 2.
double method1_score(const Matrix& z2);

/// P x M' Pearson correlations between rows of x and rows of z2. Rows with
/// zero variance contribute zero correlations.
Matrix correlation_matrix(const Matrix& x, const Matrix& z2);

struct CumulativeSpectrum {
  std::vector<double> values;  // C(k), k = 1..K
  bool degenerate = false;     // all singular values were zero
};

CumulativeSpectrum cumulative_singular(const Matrix& r);

struct Method2Score {
  double sc1 = 0.0;
  double sc2 = 0.0;
  std::size_t idx = 0;  // 1-based
  std::size_t k = 0;
};

Method2Score method2_from_spectrum(const CumulativeSpectrum& spectrum, double gamma);
Method2Score method2_from_correlation(const Matrix& r, double gamma);
Method2Score method2_score(const Matrix& x, const Matrix& z2, double gamma);

struct Selection {
  TransformKind chosen;
  std::vector<SelectionScore> table;  // bag order
};

/// Index of the lowest sc1 among non-degenerate rows; ties go to the larger
/// sc2 when use_sc2, then to the earlier row. Empty if every row is degenerate.
std::optional<std::size_t> best_candidate(const std::vector<SelectionScore>& table, bool use_sc2);

/// Scores every kind of `bag` on y_prev (x is the preprocessed network
/// input, used by Method 2) and returns the winner. Method must be Method1
/// or Method2. Throws SelectionImpossibleError when every candidate is
/// degenerate.
Selection select_transform(const std::vector<TransformKind>& bag, const Matrix& y_prev, const Matrix& x,
                           const HyperParams& hp);

}  // namespace dtssfn
