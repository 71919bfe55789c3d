#include "commands.hpp"

#include "dtssfn/error.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

using namespace dtssfn;

namespace {

struct Overrides {
  std::string config;
  std::optional<std::string> format, train, train_labels, test, test_labels;
  std::optional<std::string> method, bag, preprocess, part2, admm_start, out;
  std::optional<double> gamma, eta_var, eta_layer, alpha, mu, lambda0, split;
  std::optional<std::size_t> kmax, lmax, subset;
  std::optional<std::uint64_t> seed;
};

void add_run_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config, "JSON run configuration");
  cmd->add_option("--dataset-format", o.format, "csv, libsvm, idx or synth");
  cmd->add_option("--train", o.train, "training file (idx: images)");
  cmd->add_option("--train-labels", o.train_labels, "idx training labels");
  cmd->add_option("--test", o.test, "test file; a split is made when absent");
  cmd->add_option("--test-labels", o.test_labels, "idx test labels");
  cmd->add_option("--split", o.split, "train share when splitting");
  cmd->add_option("--train-subset", o.subset, "seeded training subset size");
  cmd->add_option("--method", o.method, "1, 2, fixed:<kind> or random:<seed>");
  cmd->add_option("--gamma", o.gamma);
  cmd->add_option("--eta-var", o.eta_var);
  cmd->add_option("--eta-layer", o.eta_layer);
  cmd->add_option("--alpha", o.alpha);
  cmd->add_option("--mu", o.mu);
  cmd->add_option("--lambda0", o.lambda0);
  cmd->add_option("--kmax", o.kmax);
  cmd->add_option("--lmax", o.lmax);
  cmd->add_option("--bag", o.bag, "comma separated transform names");
  cmd->add_option("--preprocess", o.preprocess, "none, unit or zscore");
  cmd->add_option("--part2-activation", o.part2, "relu or linear");
  cmd->add_option("--admm-start", o.admm_start, "zero or lfp");
  cmd->add_option("--seed", o.seed);
  cmd->add_option("--out", o.out, "output directory");
}

RunConfig resolve(const Overrides& o) {
  RunConfig cfg;
  if (!o.config.empty()) {
    std::ifstream in(o.config);
    if (!in) throw IoError("cannot open config '" + o.config + "'");
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(o.config + ": " + e.what());
    }
    cfg = run_config_from_json(j);
  }
  auto& d = cfg.dataset;
  auto& hp = cfg.hp;
  if (o.format) d.format = parse_dataset_format(*o.format);
  if (o.train) d.train = *o.train;
  if (o.train_labels) d.train_labels = *o.train_labels;
  if (o.test) d.test = *o.test;
  if (o.test_labels) d.test_labels = *o.test_labels;
  if (o.split) d.split_fraction = *o.split;
  if (o.subset) d.train_subset = *o.subset;
  if (o.method) hp.method = MethodSpec::parse(*o.method);
  if (o.gamma) hp.gamma = *o.gamma;
  if (o.eta_var) hp.eta_var = *o.eta_var;
  if (o.eta_layer) hp.eta_layer = *o.eta_layer;
  if (o.alpha) hp.alpha = *o.alpha;
  if (o.mu) hp.mu = *o.mu;
  if (o.lambda0) hp.lambda0 = *o.lambda0;
  if (o.kmax) hp.k_max = *o.kmax;
  if (o.lmax) hp.l_max = *o.lmax;
  if (o.bag) hp.bag = parse_bag(*o.bag);
  if (o.preprocess) hp.preprocess = parse_preprocess_mode(*o.preprocess);
  if (o.part2) hp.part2_activation = parse_part2_activation(*o.part2);
  if (o.admm_start) hp.admm_start = parse_admm_start(*o.admm_start);
  if (o.seed) cfg.seed = *o.seed;
  if (o.out) cfg.out = *o.out;
  if (!(d.split_fraction > 0.0 && d.split_fraction < 1.0)) throw ConfigError("split must lie in (0, 1)");
  hp.validate();
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Layer-wise SSFN training with deterministic transforms"};
  app.require_subcommand(1);

  Overrides train_o;
  auto* train_cmd = app.add_subcommand("train", "train a network and write model and reports");
  add_run_flags(train_cmd, train_o);

  Overrides eval_o;
  std::string model_path, split = "test";
  auto* eval_cmd = app.add_subcommand("eval", "accuracy and confusion counts of a saved model");
  add_run_flags(eval_cmd, eval_o);
  eval_cmd->add_option("--model", model_path, "model container")->required();
  eval_cmd->add_option("--on", split, "train or test split")->check(CLI::IsMember({"train", "test"}));

  std::string bench_kinds = "FWHT1,FWHT2,DCT,DHT,Haar,DB4", bench_json;
  std::vector<std::size_t> bench_sizes{256, 1024, 4096};
  std::size_t reps = 21;
  std::uint64_t bench_seed = 0;
  auto* bench_cmd = app.add_subcommand("bench", "time fast transforms against dense matrix-vector products");
  bench_cmd->add_option("--kinds", bench_kinds, "comma separated transform names");
  bench_cmd->add_option("--sizes", bench_sizes, "input lengths")->delimiter(',');
  bench_cmd->add_option("--reps", reps, "timed repetitions");
  bench_cmd->add_option("--seed", bench_seed);
  bench_cmd->add_option("--json", bench_json, "also write the table as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? cli::kOk : cli::kUsage;
  }

  try {
    if (*train_cmd) {
      cli::cmd_train(resolve(train_o), std::cout);
    } else if (*eval_cmd) {
      cli::cmd_eval(model_path, resolve(eval_o), split, std::cout);
    } else if (*bench_cmd) {
      const auto rows = cli::run_bench(parse_bag(bench_kinds), bench_sizes, reps, bench_seed);
      std::cout << cli::format_bench(rows);
      if (!bench_json.empty()) {
        std::ofstream out(bench_json);
        out << cli::bench_to_json(rows).dump(2) << "\n";
        if (!out) throw IoError("cannot write '" + bench_json + "'");
      }
    }
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kNumeric;
  } catch (const DegenerateLayerError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kNumeric;
  } catch (const SelectionImpossibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kNumeric;
  } catch (const InsufficientSamplesError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kNumeric;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return cli::kUsage;
  }
  return cli::kOk;
}
