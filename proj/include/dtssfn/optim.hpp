#pragma once

#include "dtssfn/linalg.hpp"

#include <cstddef>

namespace dtssfn {

struct AdmmConfig {
  double mu = 1e3;            // penalty parameter
  std::size_t k_max = 100;    // iterations, always run to completion
  double epsilon = 4.0;       // squared Frobenius radius

  /// epsilon = 2 * alpha * q, the layer-output radius used during training.
  static AdmmConfig for_layer(double mu, std::size_t k_max, double alpha, std::size_t q);

  /// Throws ConfigError unless mu > 0, k_max >= 1 and epsilon > 0.
  void validate() const;
};

/// argmin_O ||T - O Y||_F^2 + lambda0 ||O||_F^2 for Y (n x J) and T (Q x J).
/// With lambda0 == 0 the minimum-norm least-squares solution is returned.
Matrix ridge_solve(const Matrix& y, const Matrix& t, double lambda0);

/// Least squares over the ball ||O||_F^2 <= cfg.epsilon.
///
/// Splitting with variables (O, Z, L), all starting at zero:
///   O <- argmin ||T - O Y||^2 + (mu/2) ||O - Z + L||^2
///   Z <- project(O + L)
///   L <- L + O - Z
/// The O-update factorization is computed once. After k_max iterations the
/// last O is projected onto the ball so the result is always feasible.
Matrix admm_constrained_ls(const Matrix& y, const Matrix& t, const AdmmConfig& cfg);

/// Same iteration started from O = start, Z = project(start), L = 0.
Matrix admm_constrained_ls(const Matrix& y, const Matrix& t, const AdmmConfig& cfg, const Matrix& start);

/// Radial projection onto ||M||_F^2 <= epsilon.
Matrix project_frobenius_ball(const Matrix& m, double epsilon);

/// (1/J) ||T - O Y||_F^2
double training_cost(const Matrix& o, const Matrix& y, const Matrix& t);

}  // namespace dtssfn
