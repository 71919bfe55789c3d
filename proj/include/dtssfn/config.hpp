#pragma once

// JSON forms of hyperparameters and run configuration.

#include "dtssfn/data.hpp"
#include "dtssfn/hyperparams.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace dtssfn {

nlohmann::json hyperparams_to_json(const HyperParams& hp);

/// Overrides fields of `base` with those present in j. Unknown keys and
/// wrongly typed values throw ConfigError.
HyperParams hyperparams_from_json(const nlohmann::json& j, HyperParams base = {});

std::vector<TransformKind> parse_bag(const std::string& comma_list);

enum class DatasetFormat { Csv, Libsvm, Idx, Synth };

DatasetFormat parse_dataset_format(const std::string& text);
std::string to_string(DatasetFormat f);

struct DatasetSpec {
  DatasetFormat format = DatasetFormat::Libsvm;
  std::string train;               // csv / libsvm file, or idx images
  std::string train_labels;        // idx only
  std::string test;                // optional; when empty a split is made
  std::string test_labels;         // idx only
  double split_fraction = 0.7;     // train share when no test file is given
  std::size_t train_subset = 0;    // 0 keeps every training sample
  CsvOptions csv;
  // synth
  std::size_t classes = 3, dims = 8, samples_per_class = 100;
  double spread = 0.5;
};

struct RunConfig {
  DatasetSpec dataset;
  HyperParams hp;
  std::string out = "out";
  std::uint64_t seed = 0;
};

nlohmann::json run_config_to_json(const RunConfig& cfg);
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

/// Loads and splits according to the spec; seed drives split and subset.
Dataset load_dataset(const DatasetSpec& spec, std::uint64_t seed, std::vector<std::string>* warnings = nullptr);

}  // namespace dtssfn
