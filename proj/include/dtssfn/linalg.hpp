#pragma once

#include <Eigen/Dense>

#include <string_view>
#include <vector>

namespace dtssfn {

// Samples are stored as columns throughout: a feature matrix is P x J.
using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using Mask = std::vector<bool>;

/// Throws NumericError naming `what` if any entry is NaN or infinite.
void require_finite(const Eigen::Ref<const Matrix>& m, std::string_view what);

}  // namespace dtssfn
