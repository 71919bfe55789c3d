#pragma once

// Subcommands behind the dtssfn executable.

#include "dtssfn/config.hpp"
#include "dtssfn/network.hpp"
#include "dtssfn/transforms.hpp"

#include <json.hpp>

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

namespace dtssfn::cli {

enum ExitCode : int { kOk = 0, kNumeric = 1, kUsage = 2 };

struct TrainResult {
  NetworkModel model;
  nlohmann::json report;
  std::string summary;
};

/// Trains on cfg.dataset and builds the report. Writes nothing.
TrainResult run_train(const RunConfig& cfg);

/// run_train plus model.dtssfn, report.json and report.txt under cfg.out.
TrainResult cmd_train(const RunConfig& cfg, std::ostream& out);

struct EvalResult {
  double accuracy = 0.0;
  std::vector<std::vector<std::size_t>> confusion;  // [truth][predicted]
  std::vector<std::string> class_names;
};

EvalResult evaluate(const NetworkModel& model, const Matrix& x, const std::vector<std::string>& labels);

/// split is "train" or "test".
EvalResult cmd_eval(const std::string& model_path, const RunConfig& cfg, const std::string& split,
                    std::ostream& out);

struct BenchRow {
  TransformKind kind;
  std::size_t n = 0;
  double fast_median = 0.0, fast_mad = 0.0;    // seconds
  double naive_median = 0.0, naive_mad = 0.0;  // seconds
  double max_error = 0.0;
  double speedup() const { return naive_median / fast_median; }
};

/// Times apply_fast against a dense matrix-vector product with a prebuilt
/// matrix. Throws NumericError when the two disagree beyond 1e-9.
std::vector<BenchRow> run_bench(const std::vector<TransformKind>& kinds, const std::vector<std::size_t>& sizes,
                                std::size_t repetitions, std::uint64_t seed);

std::string format_bench(const std::vector<BenchRow>& rows);
nlohmann::json bench_to_json(const std::vector<BenchRow>& rows);

/// Percent with two decimals.
std::string percent(double value);

}  // namespace dtssfn::cli
