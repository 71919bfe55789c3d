#include "commands.hpp"

#include "dtssfn/error.hpp"
#include "dtssfn/model_io.hpp"
#include "dtssfn/rng.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace dtssfn::cli {

using nlohmann::json;

std::string percent(double value) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(2) << value;
  return s.str();
}

namespace {

Labels remap(const std::vector<std::string>& labels, const std::vector<std::string>& names) {
  LabelMap map{names};
  Labels out;
  out.reserve(labels.size());
  for (const auto& l : labels) out.push_back(map.id(l));
  return out;
}

std::vector<std::string> names_of(const Labels& ids, const std::vector<std::string>& names) {
  std::vector<std::string> out;
  out.reserve(ids.size());
  for (auto id : ids) out.push_back(names.at(id));
  return out;
}

json score_table(const std::vector<SelectionScore>& scores) {
  json rows = json::array();
  for (const auto& s : scores) {
    rows.push_back(json{{"transform", to_string(s.kind)},
                        {"sc1", s.sc1},
                        {"sc2", s.sc2},
                        {"kept_nodes", s.kept_nodes},
                        {"degenerate", s.degenerate}});
  }
  return rows;
}

}  // namespace

TrainResult run_train(const RunConfig& cfg) {
  cfg.hp.validate();
  std::vector<std::string> warnings;
  const Dataset ds = load_dataset(cfg.dataset, cfg.seed, &warnings);

  TrainResult r;
  r.model = train(ds.x_train, ds.t_train, cfg.hp);
  r.model.class_names = ds.class_names;
  if (!r.model.warning.empty()) warnings.push_back(r.model.warning);

  const auto train_trace = predict_trace(r.model, ds.x_train);
  const bool has_test = ds.x_test.cols() > 0;
  std::vector<Labels> test_trace;
  if (has_test) test_trace = predict_trace(r.model, ds.x_test);

  json layers = json::array();
  json curve = json::array();
  for (std::size_t l = 0; l < train_trace.size(); ++l) {
    json point{{"layer", l},
               {"cost", r.model.cost_trace[l]},
               {"train_accuracy", accuracy(train_trace[l], ds.y_train)}};
    if (has_test) point["test_accuracy"] = accuracy(test_trace[l], ds.y_test);
    curve.push_back(point);
    if (l == 0) continue;
    const auto& e = r.model.log[l - 1];
    json layer{{"layer", l},
               {"transform", to_string(e.chosen)},
               {"nodes", e.out_dim},
               {"cost", e.cost},
               {"lfp_kept", e.lfp_kept},
               {"train_accuracy", point["train_accuracy"]},
               {"scores", score_table(e.scores)}};
    if (has_test) layer["test_accuracy"] = point["test_accuracy"];
    layers.push_back(layer);
  }
  const double train_acc = curve.back()["train_accuracy"].get<double>();
  r.report = json{{"config", run_config_to_json(cfg)},
                  {"p", r.model.p},
                  {"q", r.model.q},
                  {"train_samples", ds.x_train.cols()},
                  {"test_samples", ds.x_test.cols()},
                  {"architecture", r.model.architecture()},
                  {"layers", layers},
                  {"curve", curve},
                  {"train_accuracy", train_acc},
                  {"warnings", warnings}};
  if (has_test) r.report["test_accuracy"] = curve.back()["test_accuracy"];

  std::ostringstream s;
  s << "dataset      P=" << r.model.p << " Q=" << r.model.q << " train=" << ds.x_train.cols()
    << " test=" << ds.x_test.cols() << "\n";
  s << "architecture " << r.model.architecture() << "\n";
  s << "layer  transform  nodes      cost   train    test\n";
  for (const auto& c : curve) {
    const auto l = c["layer"].get<std::size_t>();
    s << std::setw(5) << l << "  " << std::setw(9) << (l == 0 ? "ridge" : to_string(r.model.log[l - 1].chosen))
      << "  " << std::setw(5) << (l == 0 ? r.model.p : r.model.log[l - 1].out_dim) << "  " << std::setw(8)
      << std::setprecision(5) << c["cost"].get<double>() << "  " << std::setw(6)
      << percent(c["train_accuracy"].get<double>()) << "  " << std::setw(6)
      << (has_test ? percent(c["test_accuracy"].get<double>()) : "-") << "\n";
  }
  for (std::size_t l = 0; l < r.model.log.size(); ++l) {
    const auto& scores = r.model.log[l].scores;
    if (scores.empty()) continue;
    s << "scores layer " << l + 1 << "\n";
    for (const auto& sc : scores) {
      s << "  " << std::setw(9) << to_string(sc.kind) << "  sc1 " << std::setw(8) << std::setprecision(6) << sc.sc1
        << "  sc2 " << std::setw(8) << sc.sc2 << "  kept " << sc.kept_nodes << (sc.degenerate ? "  degenerate" : "")
        << "\n";
    }
  }
  s << "train accuracy " << percent(train_acc) << "%\n";
  if (has_test) s << "test accuracy  " << percent(r.report["test_accuracy"].get<double>()) << "%\n";
  for (const auto& w : warnings) s << "warning: " << w << "\n";
  s << "hyperparameters " << hyperparams_to_json(cfg.hp).dump() << "\n";
  r.summary = s.str();
  return r;
}

TrainResult cmd_train(const RunConfig& cfg, std::ostream& out) {
  TrainResult r = run_train(cfg);
  const std::filesystem::path dir(cfg.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create '" + dir.string() + "': " + ec.message());
  save_model(dir / "model.dtssfn", r.model);
  std::ofstream rep(dir / "report.json");
  rep << r.report.dump(2) << "\n";
  std::ofstream txt(dir / "report.txt");
  txt << r.summary;
  if (!rep || !txt) throw IoError("cannot write reports under '" + dir.string() + "'");
  out << r.summary;
  return r;
}

EvalResult evaluate(const NetworkModel& model, const Matrix& x, const std::vector<std::string>& labels) {
  EvalResult r;
  r.class_names = model.class_names;
  const Labels truth = remap(labels, model.class_names);
  const Labels pred = predict(model, x);
  r.accuracy = accuracy(pred, truth);
  r.confusion.assign(model.q, std::vector<std::size_t>(model.q, 0));
  for (std::size_t i = 0; i < pred.size(); ++i) ++r.confusion[truth[i]][pred[i]];
  return r;
}

EvalResult cmd_eval(const std::string& model_path, const RunConfig& cfg, const std::string& split,
                    std::ostream& out) {
  if (split != "train" && split != "test") throw ConfigError("split must be train or test");
  const NetworkModel model = load_model(model_path);
  const Dataset ds = load_dataset(cfg.dataset, cfg.seed);
  const bool on_train = split == "train";
  const Matrix& x_raw = on_train ? ds.x_train : ds.x_test;
  if (x_raw.cols() == 0) throw ConfigError("the " + split + " split is empty");
  if (static_cast<std::size_t>(x_raw.rows()) > model.p) {
    throw DimensionError("model expects " + std::to_string(model.p) + " features, dataset has " +
                         std::to_string(x_raw.rows()));
  }
  // libsvm files may omit trailing zero features
  Matrix x = Matrix::Zero(static_cast<Eigen::Index>(model.p), x_raw.cols());
  x.topRows(x_raw.rows()) = x_raw;
  const EvalResult r = evaluate(model, x, names_of(on_train ? ds.y_train : ds.y_test, ds.class_names));

  out << "accuracy " << percent(r.accuracy) << "% on " << x.cols() << " " << split << " samples\n";
  out << "confusion (rows truth, columns predicted)\n";
  std::size_t w = 5;
  for (const auto& n : r.class_names) w = std::max(w, n.size() + 1);
  out << std::setw(static_cast<int>(w)) << "";
  for (const auto& n : r.class_names) out << std::setw(static_cast<int>(w)) << n;
  out << "\n";
  for (std::size_t i = 0; i < r.confusion.size(); ++i) {
    out << std::setw(static_cast<int>(w)) << r.class_names[i];
    for (auto c : r.confusion[i]) out << std::setw(static_cast<int>(w)) << c;
    out << "\n";
  }
  return r;
}

namespace {

std::pair<double, double> median_mad(std::vector<double> v) {
  auto median = [](std::vector<double>& a) {
    std::sort(a.begin(), a.end());
    const std::size_t n = a.size();
    return n % 2 ? a[n / 2] : 0.5 * (a[n / 2 - 1] + a[n / 2]);
  };
  const double m = median(v);
  for (auto& x : v) x = std::abs(x - m);
  return {m, median(v)};
}

template <typename F>
std::vector<double> time_runs(std::size_t reps, std::size_t inner, F&& f) {
  using clock = std::chrono::steady_clock;
  std::vector<double> out;
  out.reserve(reps);
  f();
  for (std::size_t r = 0; r < reps; ++r) {
    const auto t0 = clock::now();
    for (std::size_t i = 0; i < inner; ++i) f();
    out.push_back(std::chrono::duration<double>(clock::now() - t0).count() / static_cast<double>(inner));
  }
  return out;
}

volatile double sink = 0.0;

}  // namespace

std::vector<BenchRow> run_bench(const std::vector<TransformKind>& kinds, const std::vector<std::size_t>& sizes,
                                std::size_t repetitions, std::uint64_t seed) {
  if (repetitions == 0) throw ConfigError("bench needs at least one repetition");
  std::vector<BenchRow> rows;
  Rng rng(seed);
  for (const auto& kind : kinds) {
    for (const auto n : sizes) {
      if (n < 4) throw ConfigError("bench sizes must be >= 4");
      const TransformPlan p = plan(kind, n);
      std::vector<double> x(n);
      for (auto& v : x) v = rng.normal();
      const Vector fast = apply_fast(p, x);
      const Vector naive = apply_naive(p, x);
      BenchRow row;
      row.kind = kind;
      row.n = n;
      row.max_error = (fast - naive).cwiseAbs().maxCoeff();
      if (!(row.max_error < 1e-9)) {
        throw NumericError(to_string(kind) + " N=" + std::to_string(n) + ": fast and naive differ by " +
                           std::to_string(row.max_error));
      }
      const Matrix w = transform_matrix(kind, n);
      Vector padded = Vector::Zero(static_cast<Eigen::Index>(p.padded_dim()));
      for (std::size_t i = 0; i < n; ++i) padded[static_cast<Eigen::Index>(i)] = x[i];
      Vector y(w.rows());
      // small sizes finish in nanoseconds, so each sample averages a batch
      const std::size_t inner = std::max<std::size_t>(1, 1'000'000 / (n * n));
      const auto naive_t = time_runs(repetitions, inner, [&] {
        y.noalias() = w * padded;
        sink = sink + y[0];
      });
      const auto fast_t = time_runs(repetitions, inner * 8, [&] {
        const Vector f = apply_fast(p, x);
        sink = sink + f[0];
      });
      std::tie(row.naive_median, row.naive_mad) = median_mad(naive_t);
      std::tie(row.fast_median, row.fast_mad) = median_mad(fast_t);
      rows.push_back(row);
    }
  }
  return rows;
}

namespace {

std::string ops_note(const BenchRow& r) {
  const double n = static_cast<double>(r.n);
  const bool linear = r.kind.tag == TransformTag::Haar || is_wavelet(r.kind.tag);
  std::ostringstream s;
  s << "N^2=" << static_cast<long long>(n * n) << " fast~";
  if (linear) {
    s << "N=" << r.n;
  } else {
    s << "N*log2(N)=" << static_cast<long long>(std::llround(n * std::log2(n)));
  }
  return s.str();
}

}  // namespace

std::string format_bench(const std::vector<BenchRow>& rows) {
  std::ostringstream s;
  s << std::setw(9) << "kind" << std::setw(7) << "N" << std::setw(14) << "fast us" << std::setw(10) << "mad"
    << std::setw(14) << "naive us" << std::setw(10) << "mad" << std::setw(10) << "speedup" << "  ops\n";
  s << std::fixed;
  for (const auto& r : rows) {
    s << std::setw(9) << to_string(r.kind) << std::setw(7) << r.n << std::setprecision(3) << std::setw(14)
      << r.fast_median * 1e6 << std::setw(10) << r.fast_mad * 1e6 << std::setw(14) << r.naive_median * 1e6
      << std::setw(10) << r.naive_mad * 1e6 << std::setprecision(1) << std::setw(10) << r.speedup() << "  "
      << ops_note(r) << "\n";
  }
  return s.str();
}

json bench_to_json(const std::vector<BenchRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    out.push_back(json{{"kind", to_string(r.kind)},
                       {"n", r.n},
                       {"fast_median_s", r.fast_median},
                       {"fast_mad_s", r.fast_mad},
                       {"naive_median_s", r.naive_median},
                       {"naive_mad_s", r.naive_mad},
                       {"speedup", r.speedup()},
                       {"max_error", r.max_error},
                       {"ops", ops_note(r)}});
  }
  return out;
}

}  // namespace dtssfn::cli
