#include "dtssfn/layer.hpp"

#include "dtssfn/error.hpp"

#include <algorithm>
#include <string>

namespace dtssfn {

Matrix build_vq(std::size_t q) {
  if (q == 0) throw DimensionError("build_vq: q must be positive");
  const auto n = static_cast<Eigen::Index>(q);
  Matrix v = Matrix::Zero(2 * n, n);
  v.topRows(n).setIdentity();
  v.bottomRows(n) = -Matrix::Identity(n, n);
  return v;
}

Mask prune_mask(const Matrix& z, double eta_var) {
  if (z.cols() < 2) throw InsufficientSamplesError("prune_mask: need at least 2 samples");
  const double j = static_cast<double>(z.cols());
  const Vector mean = z.rowwise().sum() / j;
  Mask mask(static_cast<std::size_t>(z.rows()));
  for (Eigen::Index r = 0; r < z.rows(); ++r) {
    const double var = (z.row(r).array() - mean[r]).square().sum() / j;
    mask[static_cast<std::size_t>(r)] = var >= eta_var;
  }
  return mask;
}

std::size_t count_kept(const Mask& mask) { return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), true)); }

void normalize_columns(Matrix& z) {
  for (Eigen::Index c = 0; c < z.cols(); ++c) {
    const double norm = z.col(c).norm();
    if (norm < 1e-12) {
      z.col(c).setZero();
    } else {
      z.col(c) /= norm;
    }
  }
}

namespace {

Matrix select_rows(const Matrix& full, const Mask& mask) {
  Matrix out(static_cast<Eigen::Index>(count_kept(mask)), full.cols());
  Eigen::Index row = 0;
  for (std::size_t r = 0; r < mask.size(); ++r) {
    if (mask[r]) out.row(row++) = full.row(static_cast<Eigen::Index>(r));
  }
  return out;
}

}  // namespace

Part2Output part2_forward(TransformKind kind, const Matrix& y_prev, double eta_var) {
  TransformPlan p = plan(kind, static_cast<std::size_t>(y_prev.rows()));
  const Matrix raw = apply_fast_columns(p, y_prev);
  Mask mask = prune_mask(raw, eta_var);
  if (count_kept(mask) == 0) {
    throw DegenerateLayerError(to_string(kind) + ": every transform node has variance below eta_var");
  }
  Matrix z = select_rows(raw, mask);
  normalize_columns(z);
  return {std::move(z), std::move(mask), std::move(p)};
}

Matrix part2_apply(const TransformPlan& plan, const Mask& mask, const Matrix& y_prev) {
  if (mask.size() != plan.output_dim()) throw DimensionError("part2_apply: mask length does not match the plan");
  Matrix z = select_rows(apply_fast_columns(plan, y_prev), mask);
  normalize_columns(z);
  return z;
}

void LayerRecord::check_consistency() const {
  if (plan.input_dim() != in_dim) throw DimensionError("layer record: plan input size differs from in_dim");
  if (prune_mask.size() != plan.output_dim()) throw DimensionError("layer record: mask length differs from plan output");
  if (static_cast<std::size_t>(output_matrix_prev.cols()) != in_dim) {
    throw DimensionError("layer record: O_prev column count differs from in_dim");
  }
  if (out_dim != 2 * static_cast<std::size_t>(output_matrix_prev.rows()) + count_kept(prune_mask)) {
    throw DimensionError("layer record: out_dim != 2q + kept nodes");
  }
  if (!(plan.kind() == transform)) throw DimensionError("layer record: plan kind differs from transform");
}

Matrix assemble_layer_output(const Matrix& top_prediction, Matrix part2, Part2Activation activation) {
  if (top_prediction.cols() != part2.cols()) throw DimensionError("layer output: sample counts differ");
  const Eigen::Index q = top_prediction.rows();
  Matrix y(2 * q + part2.rows(), top_prediction.cols());
  // ReLU(V_Q a) splits a into its positive and negative parts.
  y.topRows(q) = top_prediction.cwiseMax(0.0);
  y.middleRows(q, q) = (-top_prediction).cwiseMax(0.0);
  if (activation == Part2Activation::Relu) part2 = part2.cwiseMax(0.0);
  y.bottomRows(part2.rows()) = part2;
  return y;
}

Matrix layer_forward(const LayerRecord& layer, const Matrix& y_prev, Part2Activation activation) {
  if (static_cast<std::size_t>(y_prev.rows()) != layer.in_dim) {
    throw DimensionError("layer_forward: expected " + std::to_string(layer.in_dim) + " inputs, got " +
                         std::to_string(y_prev.rows()));
  }
  const Matrix top = layer.output_matrix_prev * y_prev;
  return assemble_layer_output(top, part2_apply(layer.plan, layer.prune_mask, y_prev), activation);
}

}  // namespace dtssfn
