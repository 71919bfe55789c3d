#pragma once

// One hidden layer: z = [V_Q O_prev y_prev ; p(w_DT(y_prev)) / ||.||], y = g(z).

#include "dtssfn/hyperparams.hpp"
#include "dtssfn/linalg.hpp"
#include "dtssfn/transforms.hpp"

#include <cstddef>

namespace dtssfn {

/// [I_q ; -I_q], 2q x q.
Matrix build_vq(std::size_t q);

/// Row m is kept iff its population variance (divisor J) is >= eta_var.
/// Throws InsufficientSamplesError when J < 2.
Mask prune_mask(const Matrix& z, double eta_var);

std::size_t count_kept(const Mask& mask);

struct Part2Output {
  Matrix z;            // kept rows, columns scaled to unit norm
  Mask mask;           // over raw transform outputs
  TransformPlan plan;
};

/// Transform every column of y_prev, drop low-variance rows, normalize each
/// column. Throws DegenerateLayerError when every row is pruned.
Part2Output part2_forward(TransformKind kind, const Matrix& y_prev, double eta_var);

/// Inference-time replay of part2_forward with a stored mask; no statistics are estimated.
Matrix part2_apply(const TransformPlan& plan, const Mask& mask, const Matrix& y_prev);

/// Scales each column to unit Euclidean norm; columns with norm < 1e-12 become zero.
void normalize_columns(Matrix& z);

struct LayerRecord {
  Matrix output_matrix_prev;  // O*_{l-1}, q x in_dim
  TransformKind transform;
  TransformPlan plan;
  Mask prune_mask;            // length plan.output_dim()
  std::size_t in_dim = 0;
  std::size_t out_dim = 0;    // 2q + kept nodes

  /// Throws DimensionError if the record's fields disagree with each other.
  void check_consistency() const;
};

/// Stack [V_Q O_prev Y_prev ; part2] and apply the activation (ReLU on the
/// top block always; on the bottom block per `part2`).
Matrix assemble_layer_output(const Matrix& top_prediction, Matrix part2, Part2Activation activation);

/// Full forward pass of one stored layer.
Matrix layer_forward(const LayerRecord& layer, const Matrix& y_prev, Part2Activation activation);

}  // namespace dtssfn
