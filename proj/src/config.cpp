#include "dtssfn/config.hpp"

#include "dtssfn/error.hpp"
#include "dtssfn/rng.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace dtssfn {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (!allowed.contains(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <typename T>
void read(const json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    if constexpr (std::is_same_v<T, double>) {
      if (!j.at(key).is_number()) throw ConfigError(std::string(key) + " must be a number");
    } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
      const auto& v = j.at(key);
      if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
        throw ConfigError(std::string(key) + " must be a non-negative integer");
      }
    } else if constexpr (std::is_same_v<T, bool>) {
      if (!j.at(key).is_boolean()) throw ConfigError(std::string(key) + " must be true or false");
    } else if constexpr (std::is_same_v<T, std::string>) {
      if (!j.at(key).is_string()) throw ConfigError(std::string(key) + " must be a string");
    }
    out = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string(key) + ": " + e.what());
  }
}

}  // namespace

json hyperparams_to_json(const HyperParams& hp) {
  json bag = json::array();
  for (const auto& k : hp.bag) bag.push_back(to_string(k));
  return json{{"lambda0", hp.lambda0},
              {"mu", hp.mu},
              {"alpha", hp.alpha},
              {"kmax", hp.k_max},
              {"eta_layer", hp.eta_layer},
              {"eta_var", hp.eta_var},
              {"lmax", hp.l_max},
              {"gamma", hp.gamma},
              {"bag", bag},
              {"method", hp.method.to_string()},
              {"part2_activation", to_string(hp.part2_activation)},
              {"preprocess", to_string(hp.preprocess)},
              {"admm_start", to_string(hp.admm_start)}};
}

HyperParams hyperparams_from_json(const json& j, HyperParams hp) {
  reject_unknown(j,
                 {"lambda0", "mu", "alpha", "kmax", "eta_layer", "eta_var", "lmax", "gamma", "bag", "method",
                  "part2_activation", "preprocess", "admm_start"},
                 "hyperparameters");
  read(j, "lambda0", hp.lambda0);
  read(j, "mu", hp.mu);
  read(j, "alpha", hp.alpha);
  read(j, "kmax", hp.k_max);
  read(j, "eta_layer", hp.eta_layer);
  read(j, "eta_var", hp.eta_var);
  read(j, "lmax", hp.l_max);
  read(j, "gamma", hp.gamma);
  if (j.contains("bag")) {
    const auto& b = j.at("bag");
    if (b.is_string()) {
      hp.bag = parse_bag(b.get<std::string>());
    } else if (b.is_array()) {
      hp.bag.clear();
      for (const auto& item : b) {
        if (!item.is_string()) throw ConfigError("bag entries must be strings");
        const auto k = parse_transform_kind(item.get<std::string>());
        if (!k) throw ConfigError("unknown transform '" + item.get<std::string>() + "' in bag");
        hp.bag.push_back(*k);
      }
    } else {
      throw ConfigError("bag must be a list of transform names");
    }
  }
  if (j.contains("method")) {
    const auto& m = j.at("method");
    if (m.is_string()) {
      hp.method = MethodSpec::parse(m.get<std::string>());
    } else if (m.is_number_integer()) {
      hp.method = MethodSpec::parse(std::to_string(m.get<std::int64_t>()));
    } else {
      throw ConfigError("method must be a string");
    }
  }
  std::string text;
  if (j.contains("part2_activation")) {
    read(j, "part2_activation", text);
    hp.part2_activation = parse_part2_activation(text);
  }
  if (j.contains("preprocess")) {
    read(j, "preprocess", text);
    hp.preprocess = parse_preprocess_mode(text);
  }
  if (j.contains("admm_start")) {
    read(j, "admm_start", text);
    hp.admm_start = parse_admm_start(text);
  }
  return hp;
}

std::vector<TransformKind> parse_bag(const std::string& comma_list) {
  std::vector<TransformKind> bag;
  std::istringstream in(comma_list);
  std::string item;
  while (std::getline(in, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (item.empty()) continue;
    const auto k = parse_transform_kind(item);
    if (!k) throw ConfigError("unknown transform '" + item + "' in bag");
    bag.push_back(*k);
  }
  if (bag.empty()) throw ConfigError("bag must name at least one transform");
  return bag;
}

DatasetFormat parse_dataset_format(const std::string& text) {
  if (text == "csv") return DatasetFormat::Csv;
  if (text == "libsvm") return DatasetFormat::Libsvm;
  if (text == "idx") return DatasetFormat::Idx;
  if (text == "synth") return DatasetFormat::Synth;
  throw ConfigError("dataset format must be csv, libsvm, idx or synth, got '" + text + "'");
}

std::string to_string(DatasetFormat f) {
  switch (f) {
    case DatasetFormat::Csv: return "csv";
    case DatasetFormat::Libsvm: return "libsvm";
    case DatasetFormat::Idx: return "idx";
    case DatasetFormat::Synth: return "synth";
  }
  return "?";
}

json run_config_to_json(const RunConfig& cfg) {
  const auto& d = cfg.dataset;
  json ds{{"format", to_string(d.format)},
          {"train", d.train},
          {"test", d.test},
          {"split_fraction", d.split_fraction},
          {"train_subset", d.train_subset}};
  if (d.format == DatasetFormat::Idx) {
    ds["train_labels"] = d.train_labels;
    ds["test_labels"] = d.test_labels;
  }
  if (d.format == DatasetFormat::Csv) {
    ds["delimiter"] = std::string(1, d.csv.delimiter);
    ds["header"] = d.csv.has_header;
    ds["label_column"] = d.csv.label_name.empty() ? json(d.csv.label_index) : json(d.csv.label_name);
  }
  if (d.format == DatasetFormat::Synth) {
    ds["classes"] = d.classes;
    ds["dims"] = d.dims;
    ds["samples_per_class"] = d.samples_per_class;
    ds["spread"] = d.spread;
  }
  return json{{"dataset", ds}, {"hyperparameters", hyperparams_to_json(cfg.hp)}, {"out", cfg.out}, {"seed", cfg.seed}};
}

RunConfig run_config_from_json(const json& j, RunConfig cfg) {
  reject_unknown(j, {"dataset", "hyperparameters", "out", "seed"}, "config");
  read(j, "out", cfg.out);
  read(j, "seed", cfg.seed);
  if (j.contains("hyperparameters")) cfg.hp = hyperparams_from_json(j.at("hyperparameters"), cfg.hp);
  if (j.contains("dataset")) {
    const json& ds = j.at("dataset");
    reject_unknown(ds,
                   {"format", "train", "train_labels", "test", "test_labels", "split_fraction", "train_subset",
                    "delimiter", "header", "label_column", "classes", "dims", "samples_per_class", "spread"},
                   "dataset");
    auto& d = cfg.dataset;
    std::string text;
    if (ds.contains("format")) {
      read(ds, "format", text);
      d.format = parse_dataset_format(text);
    }
    read(ds, "train", d.train);
    read(ds, "train_labels", d.train_labels);
    read(ds, "test", d.test);
    read(ds, "test_labels", d.test_labels);
    read(ds, "split_fraction", d.split_fraction);
    read(ds, "train_subset", d.train_subset);
    if (ds.contains("delimiter")) {
      read(ds, "delimiter", text);
      if (text.size() != 1) throw ConfigError("delimiter must be a single character");
      d.csv.delimiter = text[0];
    }
    read(ds, "header", d.csv.has_header);
    if (ds.contains("label_column")) {
      const auto& lc = ds.at("label_column");
      if (lc.is_string()) {
        d.csv.label_name = lc.get<std::string>();
      } else if (lc.is_number_integer()) {
        d.csv.label_index = lc.get<int>();
        d.csv.label_name.clear();
      } else {
        throw ConfigError("label_column must be a name or an integer index");
      }
    }
    read(ds, "classes", d.classes);
    read(ds, "dims", d.dims);
    read(ds, "samples_per_class", d.samples_per_class);
    read(ds, "spread", d.spread);
  }
  return cfg;
}

namespace {

RawTable load_table(const DatasetSpec& spec, const std::string& path, const std::string& labels) {
  switch (spec.format) {
    case DatasetFormat::Csv: return load_csv(path, spec.csv);
    case DatasetFormat::Libsvm: return load_libsvm(path);
    case DatasetFormat::Idx:
      if (labels.empty()) throw ConfigError("idx datasets need a labels file for '" + path + "'");
      return load_idx(path, labels);
    case DatasetFormat::Synth: break;
  }
  throw ConfigError("synthetic datasets have no files");
}

}  // namespace

Dataset load_dataset(const DatasetSpec& spec, std::uint64_t seed, std::vector<std::string>* warnings) {
  RawTable train, test;
  bool need_split = true;
  if (spec.format == DatasetFormat::Synth) {
    train = synth_blobs(spec.classes, spec.dims, spec.samples_per_class, spec.spread, seed);
  } else {
    if (spec.train.empty()) throw ConfigError("no training file given");
    train = load_table(spec, spec.train, spec.train_labels);
    if (!spec.test.empty()) {
      test = load_table(spec, spec.test, spec.test_labels);
      need_split = false;
    }
  }
  if (need_split) {
    const auto s = split_indices(train.labels, spec.split_fraction, mix_seed(seed, 0));
    if (!s.warning.empty() && warnings) warnings->push_back(s.warning);
    test = take_columns(train, s.test);
    train = take_columns(train, s.train);
  }
  if (spec.train_subset > 0 && spec.train_subset < train.labels.size()) {
    train = take_columns(train, subsample_indices(train.labels.size(), spec.train_subset, mix_seed(seed, 1)));
  }
  return make_dataset(train, test);
}

}  // namespace dtssfn
