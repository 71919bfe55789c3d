#include "dtssfn/network.hpp"

#include "dtssfn/error.hpp"
#include "dtssfn/optim.hpp"
#include "dtssfn/rng.hpp"

#include <sstream>

namespace dtssfn {

std::string NetworkModel::architecture() const {
  std::ostringstream s;
  if (layers.empty()) {
    s << p;
    return s.str();
  }
  for (std::size_t i = 0; i < layers.size(); ++i) s << (i ? "-" : "") << layers[i].out_dim;
  s << " (";
  for (std::size_t i = 0; i < layers.size(); ++i) s << (i ? "-" : "") << to_string(layers[i].transform);
  s << ")";
  return s.str();
}

Labels argmax_columns(const Matrix& scores) {
  Labels out(static_cast<std::size_t>(scores.cols()), 0);
  for (Eigen::Index c = 0; c < scores.cols(); ++c) {
    Eigen::Index best = 0;
    for (Eigen::Index r = 1; r < scores.rows(); ++r) {
      if (scores(r, c) > scores(best, c)) best = r;
    }
    out[static_cast<std::size_t>(c)] = static_cast<std::size_t>(best);
  }
  return out;
}

Labels labels_from_targets(const Matrix& t) { return argmax_columns(t); }

double accuracy(const Labels& pred, const Labels& truth) {
  if (pred.size() != truth.size()) throw DimensionError("accuracy: label vectors differ in length");
  if (pred.empty()) throw InsufficientSamplesError("accuracy: no samples");
  std::size_t hit = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hit += pred[i] == truth[i];
  return 100.0 * static_cast<double>(hit) / static_cast<double>(pred.size());
}

namespace {

// [I_q, -I_q, 0]: reads the previous prediction back out of the V_Q block.
Matrix lfp_output(std::size_t q, std::size_t width) {
  const auto n = static_cast<Eigen::Index>(q);
  Matrix o = Matrix::Zero(n, static_cast<Eigen::Index>(width));
  o.leftCols(n).setIdentity();
  o.middleCols(n, n) = -Matrix::Identity(n, n);
  return o;
}

}  // namespace

NetworkModel train(const Matrix& x, const Matrix& t, const HyperParams& hp) {
  hp.validate();
  if (x.cols() != t.cols()) throw DimensionError("train: x and t sample counts differ");
  if (x.cols() < 2) throw InsufficientSamplesError("train: need at least 2 samples");
  if (x.rows() == 0 || t.rows() == 0) throw DimensionError("train: empty features or targets");
  require_finite(t, "train targets");

  NetworkModel model;
  model.p = static_cast<std::size_t>(x.rows());
  model.q = static_cast<std::size_t>(t.rows());
  model.hp = hp;
  model.preprocessor = Preprocessor::fit(x, hp.preprocess);
  const Matrix xp = model.preprocessor.apply(x);
  const Labels truth = labels_from_targets(t);

  Matrix o_prev = ridge_solve(xp, t, hp.lambda0);
  double c_prev = training_cost(o_prev, xp, t);
  model.cost_trace.push_back(c_prev);
  model.train_accuracy0 = accuracy(argmax_columns(o_prev * xp), truth);

  const AdmmConfig admm = AdmmConfig::for_layer(hp.mu, hp.k_max, hp.alpha, model.q);
  Matrix y_prev = xp;

  for (std::size_t l = 1; l <= hp.l_max; ++l) {
    if (!(c_prev > 0.0)) break;

    LayerLog entry;
    try {
      switch (hp.method.method) {
        case SelectionMethod::Method1:
        case SelectionMethod::Method2: {
          Selection sel = select_transform(hp.bag, y_prev, xp, hp);
          entry.chosen = sel.chosen;
          entry.scores = std::move(sel.table);
          break;
        }
        case SelectionMethod::Fixed: entry.chosen = hp.method.fixed; break;
        case SelectionMethod::Random: entry.chosen = TransformKind::random(mix_seed(hp.method.seed, l)); break;
      }
    } catch (const SelectionImpossibleError& e) {
      model.warning = "layer " + std::to_string(l) + ": " + e.what();
      break;
    }

    Part2Output part2;
    try {
      part2 = part2_forward(entry.chosen, y_prev, hp.eta_var);
    } catch (const DegenerateLayerError& e) {
      model.warning = "layer " + std::to_string(l) + ": " + e.what();
      break;
    }

    const Matrix y = assemble_layer_output(o_prev * y_prev, part2.z, hp.part2_activation);
    Matrix o_lfp = lfp_output(model.q, static_cast<std::size_t>(y.rows()));
    Matrix o = hp.admm_start == AdmmStart::Lfp ? admm_constrained_ls(y, t, admm, o_lfp) : admm_constrained_ls(y, t, admm);
    double c = training_cost(o, y, t);
    const double c_lfp = training_cost(o_lfp, y, t);
    if (c_lfp < c) {
      o = std::move(o_lfp);
      c = c_lfp;
      entry.lfp_kept = true;
    }

    if ((c_prev - c) / c_prev < hp.eta_layer) break;

    LayerRecord rec;
    rec.output_matrix_prev = o_prev;
    rec.transform = entry.chosen;
    rec.plan = part2.plan;
    rec.prune_mask = std::move(part2.mask);
    rec.in_dim = static_cast<std::size_t>(y_prev.rows());
    rec.out_dim = static_cast<std::size_t>(y.rows());
    rec.check_consistency();
    model.layers.push_back(std::move(rec));

    entry.out_dim = static_cast<std::size_t>(y.rows());
    entry.cost = c;
    entry.train_accuracy = accuracy(argmax_columns(o * y), truth);
    model.log.push_back(std::move(entry));
    model.cost_trace.push_back(c);

    o_prev = std::move(o);
    c_prev = c;
    y_prev = y;
  }

  model.final_output = o_prev;
  return model;
}

namespace {

template <typename Visit>
void forward(const NetworkModel& model, const Matrix& x, Visit&& visit) {
  if (static_cast<std::size_t>(x.rows()) != model.p) {
    throw DimensionError("predict: model expects " + std::to_string(model.p) + " features, got " +
                         std::to_string(x.rows()));
  }
  Matrix y = model.preprocessor.apply(x);
  for (const auto& layer : model.layers) {
    visit(layer.output_matrix_prev, y);
    y = layer_forward(layer, y, model.hp.part2_activation);
  }
  visit(model.final_output, y);
}

}  // namespace

Matrix predict_scores(const NetworkModel& model, const Matrix& x) {
  Matrix out;
  forward(model, x, [&](const Matrix& o, const Matrix& y) {
    if (&o == &model.final_output) out = o * y;
  });
  return out;
}

Labels predict(const NetworkModel& model, const Matrix& x) { return argmax_columns(predict_scores(model, x)); }

std::vector<Labels> predict_trace(const NetworkModel& model, const Matrix& x) {
  std::vector<Labels> out;
  forward(model, x, [&](const Matrix& o, const Matrix& y) { out.push_back(argmax_columns(o * y)); });
  return out;
}

}  // namespace dtssfn
