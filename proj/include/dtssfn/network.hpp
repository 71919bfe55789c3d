#pragma once

// Layer-wise SSFN training with deterministic transforms.

#include "dtssfn/hyperparams.hpp"
#include "dtssfn/layer.hpp"
#include "dtssfn/linalg.hpp"
#include "dtssfn/preprocess.hpp"
#include "dtssfn/selection.hpp"

#include <cstddef>
#include <string>
#include <vector>

namespace dtssfn {

using Labels = std::vector<std::size_t>;

struct LayerLog {
  TransformKind chosen;
  std::vector<SelectionScore> scores;  // empty for fixed and random methods
  std::size_t out_dim = 0;
  double cost = 0.0;
  bool lfp_kept = false;               // ADMM did worse than passing the previous output through
  double train_accuracy = 0.0;
};

struct NetworkModel {
  std::size_t p = 0;
  std::size_t q = 0;
  HyperParams hp;
  Preprocessor preprocessor;
  std::vector<LayerRecord> layers;
  Matrix final_output;                 // O*_L
  std::vector<double> cost_trace;      // C*_0 .. C*_L
  std::vector<std::string> class_names;
  double train_accuracy0 = 0.0;        // layer-0 classifier on the training set
  std::vector<LayerLog> log;           // one entry per accepted layer
  std::string warning;                 // set when growth stopped on a degenerate layer

  /// "n1-n2-... (K1-K2-...)"; just "P" for a layer-0 model.
  std::string architecture() const;
};

/// x is P x J raw features, t is Q x J one-hot targets. Preprocessing is
/// fitted on x according to hp.preprocess.
NetworkModel train(const Matrix& x, const Matrix& t, const HyperParams& hp);

/// Argmax of O*_L y_L per column, lowest index on ties.
Labels predict(const NetworkModel& model, const Matrix& x);

/// Raw network output O*_L y_L, Q x J.
Matrix predict_scores(const NetworkModel& model, const Matrix& x);

/// Predictions read out after every depth 0..L using the intermediate O*_l.
std::vector<Labels> predict_trace(const NetworkModel& model, const Matrix& x);

Labels argmax_columns(const Matrix& scores);

/// Labels from one-hot (or score) columns.
Labels labels_from_targets(const Matrix& t);

double accuracy(const Labels& pred, const Labels& truth);

}  // namespace dtssfn
