// Acceptance run: one PASS/FAIL/SKIP line per criterion.
//
//   acceptance [--only N,..] [--known-fail N,..] [--json PATH]
//
// Exit status is 0 when every criterion passes or is listed in --known-fail,
// 77 when nothing ran, 1 otherwise. Known failures still print FAIL.

#include "commands.hpp"
#include "oracles.hpp"

#include "dtssfn/data.hpp"
#include "dtssfn/error.hpp"
#include "dtssfn/model_io.hpp"
#include "dtssfn/network.hpp"
#include "dtssfn/optim.hpp"
#include "dtssfn/rng.hpp"
#include "dtssfn/selection.hpp"
#include "dtssfn/transforms.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <set>
#include <sstream>

using namespace dtssfn;
namespace fs = std::filesystem;

namespace {

// Tolerances and windows.
constexpr double kTransformTol = 1e-9;
constexpr double kParsevalTol = 1e-9;
constexpr double kAdmmRelTol = 1e-4;
constexpr double kMonotoneTol = 1e-9;
constexpr double kVowelM2Lo = 59.4, kVowelM2Hi = 67.4;
constexpr double kVowelM1Lo = 60.7, kVowelM1Hi = 68.7;
constexpr double kMnistMin = 92.0;
constexpr double kRandLo = 55.4, kRandHi = 65.0;
constexpr double kBenchSpeedup = 10.0;

enum class Status { Pass, Fail, Skip };

struct Outcome {
  Status status = Status::Fail;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double budget_s;
  std::function<Outcome()> run;
};

std::string fmt(double v, int digits = 2) {
  std::ostringstream s;
  s << std::fixed << std::setprecision(digits) << v;
  return s.str();
}

std::string sci(double v) {
  std::ostringstream s;
  s << std::scientific << std::setprecision(2) << v;
  return s.str();
}

fs::path data_dir() {
  if (const char* env = std::getenv("DTSSFN_DATA_DIR")) return env;
  return DTSSFN_DATA_DIR;
}

Dataset vowel() {
  const fs::path dir = data_dir() / "vowel";
  return make_dataset(load_libsvm(dir / "vowel.train", 10), load_libsvm(dir / "vowel.test", 10));
}

HyperParams vowel_hp(MethodSpec method) {
  HyperParams hp;
  hp.lambda0 = 1e1;
  hp.mu = 1e3;
  hp.method = method;
  return hp;
}

double test_accuracy(const NetworkModel& m, const Dataset& ds) { return accuracy(predict(m, ds.x_test), ds.y_test); }

bool monotone(const std::vector<double>& trace) {
  for (std::size_t l = 1; l < trace.size(); ++l) {
    if (trace[l] > trace[l - 1] + kMonotoneTol) return false;
  }
  return true;
}

Outcome transform_equivalence() {
  Rng rng(101);
  double worst = 0.0;
  std::string where;
  std::size_t cases = 0;
  for (const auto& kind : bag_default()) {
    for (const std::size_t n : {4, 8, 13, 64, 100, 256, 1024}) {
      const TransformPlan p = plan(kind, n);
      // apply_naive rebuilds its dense matrix per call; build it once here
      const Matrix w = transform_matrix(kind, n);
      for (int v = 0; v < 100; ++v) {
        std::vector<double> x(n);
        for (auto& e : x) e = rng.normal();
        Vector padded = Vector::Zero(static_cast<Eigen::Index>(p.padded_dim()));
        for (std::size_t i = 0; i < n; ++i) padded[static_cast<Eigen::Index>(i)] = x[i];
        const double err = (apply_fast(p, x) - w * padded).cwiseAbs().maxCoeff();
        if (err > worst) {
          worst = err;
          where = to_string(kind) + " N=" + std::to_string(n);
        }
        ++cases;
      }
      std::vector<double> probe(n);
      for (auto& e : probe) e = rng.normal();
      const double naive_err = (apply_naive(p, probe) - apply_fast(p, probe)).cwiseAbs().maxCoeff();
      if (naive_err > worst) {
        worst = naive_err;
        where = to_string(kind) + " N=" + std::to_string(n) + " (apply_naive)";
      }
    }
  }
  return {worst < kTransformTol ? Status::Pass : Status::Fail,
          std::to_string(cases) + " vectors, max |fast-naive| " + sci(worst) + " at " + where};
}

Outcome parseval() {
  Rng rng(202);
  double worst_norm = 0.0, worst_rec = 0.0;
  std::size_t ortho = 0, bior = 0;
  for (const auto& kind : bag_default()) {
    const bool o = is_orthonormal(kind.tag);
    const bool b = is_biorthogonal(kind.tag);
    if (!o && !b) return {Status::Fail, to_string(kind) + " is neither orthonormal nor biorthogonal"};
    for (const std::size_t n : {4, 8, 13, 64, 100, 256, 1024}) {
      const TransformPlan p = plan(kind, n);
      for (int v = 0; v < 20; ++v) {
        std::vector<double> x(n);
        for (auto& e : x) e = rng.normal();
        const Vector y = apply_fast(p, x);
        const Vector xv = Vector::Map(x.data(), static_cast<Eigen::Index>(n));
        if (o) {
          worst_norm = std::max(worst_norm, std::abs(y.norm() - xv.norm()));
          ++ortho;
        } else {
          const Vector back = wavelet_synthesize(p, std::span<const double>(y.data(), static_cast<std::size_t>(y.size())));
          worst_rec = std::max(worst_rec, (back.head(static_cast<Eigen::Index>(n)) - xv).cwiseAbs().maxCoeff());
          ++bior;
        }
      }
    }
  }
  const bool ok = worst_norm < kParsevalTol && worst_rec < kParsevalTol;
  return {ok ? Status::Pass : Status::Fail, "norm gap " + sci(worst_norm) + " over " + std::to_string(ortho) +
                                                " vectors, reconstruction " + sci(worst_rec) + " over " +
                                                std::to_string(bior)};
}

Outcome admm_correctness() {
  Rng rng(303);
  double worst = 0.0;
  int active = 0;
  bool feasible = true;
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<Eigen::Index>(1 + rng.below(8));
    const auto q = static_cast<Eigen::Index>(1 + rng.below(4));
    const auto j = static_cast<Eigen::Index>(8 + rng.below(57));
    const Matrix y = oracle::random_matrix(rng, n, j);
    const Matrix t = (trial % 2 ? 6.0 : 0.3) * oracle::random_matrix(rng, q, j);
    const double eps = 0.5 + rng.uniform();
    if (ridge_solve(y, t, 0.0).squaredNorm() > eps) ++active;
    // penalty scaled to the data so 2000 iterations converge
    const double mu = 2.0 * (y * y.transpose()).trace() / static_cast<double>(n);
    const Matrix o = admm_constrained_ls(y, t, {mu, 2000, eps});
    feasible = feasible && o.squaredNorm() <= eps * (1 + 1e-12);
    const double ref = training_cost(oracle::projected_gradient(y, t, eps), y, t);
    const double got = training_cost(o, y, t);
    worst = std::max(worst, (got - ref) / std::max(ref, 1e-300));
  }
  const bool ok = feasible && worst < kAdmmRelTol && active > 0 && active < 50;
  return {ok ? Status::Pass : Status::Fail, "50 instances (" + std::to_string(active) +
                                                " with active ball), worst relative excess " + sci(worst) +
                                                (feasible ? ", always feasible" : ", INFEASIBLE")};
}

Outcome monotone_cost() {
  int bad = 0;
  std::size_t layers = 0;
  for (std::uint64_t s = 0; s < 20; ++s) {
    const RawTable raw = synth_blobs(3 + s % 3, 6 + s % 5, 40, 0.6, 1000 + s);
    const Dataset ds = make_dataset(raw, RawTable{});
    HyperParams hp;
    hp.l_max = 8;
    const NetworkModel m = train(ds.x_train, ds.t_train, hp);
    layers += m.layers.size();
    bad += !monotone(m.cost_trace);
  }
  const Dataset ds = vowel();
  const NetworkModel m = train(ds.x_train, ds.t_train, vowel_hp(MethodSpec{}));
  bad += !monotone(m.cost_trace);
  return {bad == 0 ? Status::Pass : Status::Fail, std::to_string(bad) + " of 21 traces increase; " +
                                                      std::to_string(layers) + " blob layers, vowel " +
                                                      std::to_string(m.layers.size()) + " layers"};
}

Outcome vowel_reproduction() {
  const Dataset ds = vowel();
  MethodSpec m1;
  m1.method = SelectionMethod::Method1;
  const NetworkModel a = train(ds.x_train, ds.t_train, vowel_hp(MethodSpec{}));
  const NetworkModel b = train(ds.x_train, ds.t_train, vowel_hp(m1));
  const NetworkModel a2 = train(ds.x_train, ds.t_train, vowel_hp(MethodSpec{}));
  const double acc2 = test_accuracy(a, ds), acc1 = test_accuracy(b, ds);
  const bool det = serialize_model(a) == serialize_model(a2);
  const bool ok = acc2 >= kVowelM2Lo && acc2 <= kVowelM2Hi && acc1 >= kVowelM1Lo && acc1 <= kVowelM1Hi && det;
  return {ok ? Status::Pass : Status::Fail,
          "method2 test " + fmt(acc2) + "% [" + a.architecture() + "], method1 test " + fmt(acc1) + "% [" +
              b.architecture() + "], rerun " + (det ? "identical" : "DIFFERS")};
}

Outcome mnist() {
  fs::path dir;
  if (const char* env = std::getenv("DTSSFN_MNIST_DIR")) dir = env;
  else dir = data_dir() / "mnist";
  auto find = [&](const std::string& stem) -> fs::path {
    for (const auto& name : {stem, stem + ".gz"}) {
      if (fs::exists(dir / name)) return dir / name;
    }
    return {};
  };
  const fs::path xi = find("train-images-idx3-ubyte"), yi = find("train-labels-idx1-ubyte");
  const fs::path xt = find("t10k-images-idx3-ubyte"), yt = find("t10k-labels-idx1-ubyte");
  if (xi.empty() || yi.empty() || xt.empty() || yt.empty()) {
    return {Status::Skip, "MNIST IDX files not found in " + dir.string()};
  }
  RawTable train_raw = load_idx(xi, yi);
  train_raw = take_columns(train_raw, subsample_indices(train_raw.labels.size(), 10000, 2024));
  const Dataset ds = make_dataset(train_raw, load_idx(xt, yt));
  HyperParams hp;
  hp.lambda0 = 1.0;
  hp.mu = 1e4;
  const NetworkModel m = train(ds.x_train, ds.t_train, hp);
  const double acc = test_accuracy(m, ds);
  return {acc >= kMnistMin ? Status::Pass : Status::Fail,
          "test " + fmt(acc) + "% [" + m.architecture() + "]"};
}

Outcome rand_baseline() {
  const Dataset ds = vowel();
  double sum = 0.0;
  std::ostringstream per;
  for (std::uint64_t s = 1; s <= 10; ++s) {
    MethodSpec r;
    r.method = SelectionMethod::Random;
    r.seed = s;
    const NetworkModel m = train(ds.x_train, ds.t_train, vowel_hp(r));
    const double acc = test_accuracy(m, ds);
    sum += acc;
    per << (s > 1 ? " " : "") << fmt(acc, 1) << "/" << m.layers.size() << "L";
  }
  const double mean = sum / 10.0;
  return {mean >= kRandLo && mean <= kRandHi ? Status::Pass : Status::Fail,
          "mean test " + fmt(mean) + "% over 10 seeds (" + per.str() + ")"};
}

Outcome table2_consistency() {
  const Dataset ds = vowel();
  const NetworkModel a = train(ds.x_train, ds.t_train, vowel_hp(MethodSpec{}));
  const NetworkModel b = train(ds.x_train, ds.t_train, vowel_hp(MethodSpec{}));
  bool all_db20 = !a.layers.empty();
  for (const auto& l : a.layers) all_db20 = all_db20 && l.transform.tag == TransformTag::Db20;
  const bool same = a.architecture() == b.architecture();
  std::string why;
  if (a.layers.empty()) why = ", no hidden layer was grown";
  else if (!all_db20) why = ", not DB20 throughout";
  return {all_db20 && same ? Status::Pass : Status::Fail,
          "architecture " + a.architecture() + ", rerun " + (same ? "identical" : "DIFFERS") + why};
}

Outcome bench_claim() {
  const auto rows = cli::run_bench({TransformKind{TransformTag::FwhtNatural}, TransformKind{TransformTag::FwhtSequency}},
                                   {4096}, 15, 9);
  std::cout << cli::format_bench(rows);
  const double s = rows.front().speedup();
  return {s >= kBenchSpeedup ? Status::Pass : Status::Fail,
          "FWHT1 N=4096 speedup " + fmt(s, 1) + "x (FWHT2 " + fmt(rows.back().speedup(), 1) + "x)"};
}

Outcome method2_units() {
  const Method2Score eye = method2_from_correlation(Matrix::Identity(4, 4), 0.8);
  const Vector u = Vector::LinSpaced(4, 1.0, 4.0).normalized();
  const Matrix rank1 = u * Vector::Constant(3, 0.5).transpose();
  const Method2Score one = method2_from_correlation(rank1, 0.8);
  const bool ok = eye.idx == 4 && eye.sc1 == 100.0 && eye.sc2 == 1.0 && one.idx == 1;
  return {ok ? Status::Pass : Status::Fail, "I4: idx " + std::to_string(eye.idx) + " sc1 " + fmt(eye.sc1, 6) +
                                                " sc2 " + fmt(eye.sc2, 6) + "; rank-1: idx " +
                                                std::to_string(one.idx)};
}

std::set<int> parse_ids(const std::string& text) {
  std::set<int> out;
  std::stringstream s(text);
  std::string item;
  while (std::getline(s, item, ',')) {
    if (!item.empty()) out.insert(std::stoi(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::string only, known, json_path;
  app.add_option("--only", only, "comma separated criterion ids");
  app.add_option("--known-fail", known, "criteria whose failure does not fail the run");
  app.add_option("--json", json_path, "write results as JSON");
  CLI11_PARSE(app, argc, argv);
  const auto selected = parse_ids(only);
  const auto known_fail = parse_ids(known);

  const std::vector<Criterion> criteria{
      {1, "transform oracle equivalence", 30, transform_equivalence},
      {2, "Parseval and reconstruction", 10, parseval},
      {3, "ADMM against projected gradient", 120, admm_correctness},
      {4, "monotone training cost", 300, monotone_cost},
      {5, "Vowel accuracy", 120, vowel_reproduction},
      {6, "MNIST 10k subset accuracy", 1800, mnist},
      {7, "random-transform baseline on Vowel", 300, rand_baseline},
      {8, "Vowel selection and architecture", 120, table2_consistency},
      {9, "FWHT fast path speedup", 60, bench_claim},
      {10, "Method 2 unit cases", 1, method2_units},
  };

  int failed = 0, ran = 0;
  nlohmann::json results = nlohmann::json::array();
  for (const auto& c : criteria) {
    if (!selected.empty() && !selected.contains(c.id)) continue;
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {Status::Fail, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (o.status == Status::Pass && secs > c.budget_s) {
      o.status = Status::Fail;
      o.detail += "; over the " + fmt(c.budget_s, 0) + " s budget";
    }
    const char* tag = o.status == Status::Pass ? "PASS" : o.status == Status::Skip ? "SKIP" : "FAIL";
    const bool known_bad = o.status == Status::Fail && known_fail.contains(c.id);
    std::cout << "criterion " << std::setw(2) << c.id << " " << tag << "  " << c.name << ": " << o.detail << " ("
              << fmt(secs, 1) << " s)" << (known_bad ? " [known]" : "") << std::endl;
    if (o.status != Status::Skip) ++ran;
    if (o.status == Status::Fail && !known_bad) ++failed;
    results.push_back({{"id", c.id}, {"name", c.name}, {"status", tag}, {"detail", o.detail}, {"seconds", secs}});
  }
  if (!json_path.empty()) std::ofstream(json_path) << results.dump(2) << "\n";
  if (ran == 0) return 77;
  return failed ? 1 : 0;
}
