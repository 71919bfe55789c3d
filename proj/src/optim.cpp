#include "dtssfn/optim.hpp"

#include "dtssfn/error.hpp"

#include <cmath>
#include <string>

namespace dtssfn {

namespace {

void check_pair(const Matrix& y, const Matrix& t, const char* op) {
  if (y.cols() != t.cols()) {
    throw DimensionError(std::string(op) + ": Y has " + std::to_string(y.cols()) + " samples but T has " +
                         std::to_string(t.cols()));
  }
  require_finite(y, std::string(op) + " Y");
  require_finite(t, std::string(op) + " T");
}

}  // namespace

AdmmConfig AdmmConfig::for_layer(double mu, std::size_t k_max, double alpha, std::size_t q) {
  return {mu, k_max, 2.0 * alpha * static_cast<double>(q)};
}

void AdmmConfig::validate() const {
  if (!(mu > 0.0) || !std::isfinite(mu)) throw ConfigError("ADMM mu must be positive");
  if (k_max < 1) throw ConfigError("ADMM k_max must be at least 1");
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw ConfigError("ADMM epsilon must be positive");
}

Matrix ridge_solve(const Matrix& y, const Matrix& t, double lambda0) {
  check_pair(y, t, "ridge_solve");
  if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) throw ConfigError("ridge lambda0 must be non-negative");

  if (lambda0 > 0.0) {
    Matrix gram = y * y.transpose();
    gram.diagonal().array() += lambda0;
    const Eigen::LLT<Matrix> llt(gram);
    if (llt.info() == Eigen::Success) {
      // O G = T Y^T with G symmetric, so O^T = G^{-1} Y T^T.
      return llt.solve(y * t.transpose()).transpose();
    }
  }
  // Minimum-norm least squares: Y^T O^T = T^T.
  const Eigen::CompleteOrthogonalDecomposition<Matrix> cod(y.transpose());
  return cod.solve(t.transpose()).transpose();
}

Matrix project_frobenius_ball(const Matrix& m, double epsilon) {
  require_finite(m, "project_frobenius_ball");
  const double sq = m.squaredNorm();
  if (sq <= epsilon) return m;
  double scale = std::sqrt(epsilon / sq);
  Matrix out = m * scale;
  // Rounding can leave ||out||^2 a few ulps above epsilon; shrink until it is
  // inside, which also makes the projection exactly idempotent.
  while (out.squaredNorm() > epsilon) {
    scale = std::nextafter(scale, 0.0);
    out = m * scale;
  }
  return out;
}

double training_cost(const Matrix& o, const Matrix& y, const Matrix& t) {
  if (o.cols() != y.rows() || o.rows() != t.rows() || y.cols() != t.cols()) {
    throw DimensionError("training_cost: O is " + std::to_string(o.rows()) + "x" + std::to_string(o.cols()) +
                         ", Y is " + std::to_string(y.rows()) + "x" + std::to_string(y.cols()) + ", T is " +
                         std::to_string(t.rows()) + "x" + std::to_string(t.cols()));
  }
  if (t.cols() == 0) throw InsufficientSamplesError("training_cost: no samples");
  Matrix residual = t;
  residual.noalias() -= o * y;
  return residual.squaredNorm() / static_cast<double>(t.cols());
}

Matrix admm_constrained_ls(const Matrix& y, const Matrix& t, const AdmmConfig& cfg) {
  return admm_constrained_ls(y, t, cfg, Matrix::Zero(t.rows(), y.rows()));
}

Matrix admm_constrained_ls(const Matrix& y, const Matrix& t, const AdmmConfig& cfg, const Matrix& start) {
  check_pair(y, t, "admm_constrained_ls");
  if (start.rows() != t.rows() || start.cols() != y.rows()) throw DimensionError("admm_constrained_ls: start has the wrong shape");
  require_finite(start, "admm start");
  cfg.validate();

  const Eigen::Index n = y.rows();
  const Eigen::Index q = t.rows();

  // Stationarity of the O-update: O (2 Y Y^T + mu I) = 2 T Y^T + mu (Z - L).
  Matrix system(n, n);
  system.noalias() = 2.0 * y * y.transpose();
  system.diagonal().array() += cfg.mu;
  const Eigen::LLT<Matrix> llt(system);
  if (llt.info() != Eigen::Success) throw NumericError("admm_constrained_ls: O-update system is not positive definite");

  Matrix rhs_fixed(n, q);
  rhs_fixed.noalias() = 2.0 * y * t.transpose();  // (2 T Y^T)^T

  Matrix o = start;
  Matrix z = project_frobenius_ball(start, cfg.epsilon);
  Matrix dual = Matrix::Zero(q, n);
  Matrix rhs(n, q);

  for (std::size_t k = 1; k <= cfg.k_max; ++k) {
    rhs = rhs_fixed;
    rhs.noalias() += cfg.mu * (z - dual).transpose();
    o = llt.solve(rhs).transpose();
    if (!o.allFinite()) {
      throw NumericError("admm_constrained_ls: non-finite O at iteration " + std::to_string(k));
    }
    z = project_frobenius_ball(o + dual, cfg.epsilon);
    dual += o - z;
  }
  return project_frobenius_ball(o, cfg.epsilon);
}

}  // namespace dtssfn
