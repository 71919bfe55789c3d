#include "doctest.h"

#include "commands.hpp"

#include "dtssfn/error.hpp"
#include "dtssfn/model_io.hpp"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace dtssfn;
namespace fs = std::filesystem;

namespace {

fs::path scratch() {
  const fs::path dir = fs::temp_directory_path() / "dtssfn_test_cli";
  fs::create_directories(dir);
  return dir;
}

int run(const std::string& args, const std::string& log = "cli.log") {
  const std::string cmd = std::string(DTSSFN_TOOL) + " " + args + " > " + (scratch() / log).string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunConfig blob_config(const fs::path& out) {
  RunConfig cfg;
  cfg.dataset.format = DatasetFormat::Synth;
  cfg.dataset.classes = 3;
  cfg.dataset.dims = 6;
  cfg.dataset.samples_per_class = 30;
  cfg.hp.l_max = 3;
  cfg.hp.mu = 1.0;
  cfg.hp.bag = parse_bag("DCT,Haar,DB4");
  cfg.seed = 11;
  cfg.out = out.string();
  return cfg;
}

}  // namespace

TEST_CASE("percent formatting") {
  CHECK(cli::percent(63.4199) == "63.42");
  CHECK(cli::percent(100.0) == "100.00");
  CHECK(cli::percent(0.005) == "0.01");
}

TEST_CASE("train writes model and reports; eval reproduces the logged accuracy") {
  const RunConfig cfg = blob_config(scratch() / "run");
  std::ostringstream out;
  const auto r = cli::cmd_train(cfg, out);
  CHECK(out.str().find("architecture ") != std::string::npos);
  CHECK(out.str().find("hyperparameters ") != std::string::npos);

  const auto report = nlohmann::json::parse(slurp(scratch() / "run" / "report.json"));
  CHECK(report.at("architecture") == r.model.architecture());
  CHECK(report.at("layers").size() == r.model.layers.size());
  CHECK(report.at("curve").size() == r.model.layers.size() + 1);
  CHECK(report.at("config").at("hyperparameters") == hyperparams_to_json(cfg.hp));

  std::ostringstream eval_out;
  const auto e = cli::cmd_eval((scratch() / "run" / "model.dtssfn").string(), cfg, "train", eval_out);
  CHECK(e.accuracy == report.at("train_accuracy").get<double>());
  const auto te = cli::cmd_eval((scratch() / "run" / "model.dtssfn").string(), cfg, "test", eval_out);
  CHECK(te.accuracy == report.at("test_accuracy").get<double>());
  std::size_t total = 0;
  for (const auto& row : te.confusion) {
    for (auto c : row) total += c;
  }
  CHECK(total == report.at("test_samples").get<std::size_t>());

  // reruns give the same container byte for byte
  const auto again = cli::run_train(cfg);
  CHECK(serialize_model(again.model) == serialize_model(r.model));
}

TEST_CASE("bench") {
  const auto rows = cli::run_bench(parse_bag("FWHT1,DB4"), {16, 64}, 3, 1);
  CHECK(rows.size() == 4);
  for (const auto& r : rows) {
    CHECK(r.max_error < 1e-9);
    CHECK(r.fast_median > 0.0);
    CHECK(r.naive_mad >= 0.0);
  }
  CHECK(cli::format_bench(rows).find("FWHT1") != std::string::npos);
  CHECK_THROWS_AS(cli::run_bench(parse_bag("DCT"), {2}, 3, 1), ConfigError);
}

TEST_CASE("executable exit statuses") {
  const fs::path dir = scratch();
  CHECK(run("train --dataset-format libsvm --train /nonexistent/vowel.train", "missing.log") == 2);
  CHECK(slurp(dir / "missing.log").find("/nonexistent/vowel.train") != std::string::npos);
  CHECK(run("train --bogus", "bogus.log") == 2);
  CHECK(run("train --dataset-format synth --gamma 2", "gamma.log") == 2);
  CHECK(run("") == 2);

  const std::string train_args = "train --dataset-format synth --lmax 2 --mu 1 --bag DCT,Haar --seed 4 --out " +
                                 (dir / "exe").string();
  REQUIRE(run(train_args, "train.log") == 0);
  CHECK(fs::exists(dir / "exe" / "model.dtssfn"));
  CHECK(fs::exists(dir / "exe" / "report.txt"));
  const std::string first = slurp(dir / "exe" / "model.dtssfn");
  REQUIRE(run(train_args, "train2.log") == 0);
  CHECK(slurp(dir / "exe" / "model.dtssfn") == first);

  CHECK(run("eval --dataset-format synth --seed 4 --model " + (dir / "exe" / "model.dtssfn").string(), "eval.log") ==
        0);
  CHECK(slurp(dir / "eval.log").find("accuracy ") != std::string::npos);

  // flags override the config file
  std::ofstream(dir / "cfg.json") << R"({"dataset": {"format": "synth"}, "hyperparameters": {"lmax": 1, "bag": "DCT"},
                                        "seed": 4, "out": ")" +
                                         (dir / "cfgrun").string() + "\"}";
  REQUIRE(run("train --config " + (dir / "cfg.json").string() + " --lmax 2 --mu 1", "cfg.log") == 0);
  const auto report = nlohmann::json::parse(slurp(dir / "cfgrun" / "report.json"));
  CHECK(report.at("config").at("hyperparameters").at("lmax") == 2);
  CHECK(report.at("config").at("hyperparameters").at("bag") == nlohmann::json::array({"DCT"}));

  std::ofstream(dir / "bad.json") << R"({"hyperparameters": {"eta": 1}})";
  CHECK(run("train --config " + (dir / "bad.json").string(), "bad.log") == 2);

  std::string corrupted = first;
  corrupted[corrupted.size() / 2] = corrupted[corrupted.size() / 2] == '1' ? '2' : '1';
  std::ofstream(dir / "corrupt.dtssfn", std::ios::binary) << corrupted;
  CHECK(run("eval --dataset-format synth --seed 4 --model " + (dir / "corrupt.dtssfn").string(), "corrupt.log") == 2);
  CHECK(slurp(dir / "corrupt.log").find("checksum") != std::string::npos);

  CHECK(run("bench --kinds FWHT1 --sizes 64,128 --reps 3", "bench.log") == 0);
}
