#include "doctest.h"

#include "dtssfn/config.hpp"
#include "dtssfn/data.hpp"
#include "dtssfn/error.hpp"
#include "dtssfn/model_io.hpp"
#include "dtssfn/network.hpp"

#include <filesystem>

using namespace dtssfn;
using nlohmann::json;

namespace {

struct Trained {
  Dataset ds;
  NetworkModel model;
};

Trained trained(PreprocessMode mode = PreprocessMode::UnitNorm) {
  const RawTable all = synth_blobs(3, 7, 30, 0.8, 5);
  const auto s = split_indices(all.labels, 0.6, 6);
  Trained t{make_dataset(take_columns(all, s.train), take_columns(all, s.test)), {}};
  HyperParams hp;
  hp.l_max = 3;
  hp.mu = 1.0;
  hp.preprocess = mode;
  hp.bag = {TransformKind{TransformTag::Dct2}, TransformKind{TransformTag::Db4}, TransformKind{TransformTag::FwhtSequency}};
  t.model = train(t.ds.x_train, t.ds.t_train, hp);
  t.model.class_names = t.ds.class_names;
  return t;
}

}  // namespace

TEST_CASE("model container round trip") {
  for (const auto mode : {PreprocessMode::UnitNorm, PreprocessMode::ZScore, PreprocessMode::None}) {
    CAPTURE(to_string(mode));
    const Trained t = trained(mode);
    REQUIRE(!t.model.layers.empty());
    const std::string bytes = serialize_model(t.model);
    CHECK(bytes.starts_with("DTSSFN-MODEL 1 "));
    CHECK(serialize_model(t.model) == bytes);

    const NetworkModel back = deserialize_model(bytes);
    CHECK(serialize_model(back) == bytes);
    CHECK(back.architecture() == t.model.architecture());
    CHECK(back.class_names == t.model.class_names);
    CHECK(predict_scores(back, t.ds.x_test) == predict_scores(t.model, t.ds.x_test));
    CHECK(predict_scores(back, t.ds.x_train) == predict_scores(t.model, t.ds.x_train));
  }
}

TEST_CASE("model files") {
  const Trained t = trained();
  const auto dir = std::filesystem::temp_directory_path() / "dtssfn_test_io";
  std::filesystem::create_directories(dir);
  save_model(dir / "m.dtssfn", t.model);
  CHECK(predict(load_model(dir / "m.dtssfn"), t.ds.x_test) == predict(t.model, t.ds.x_test));
  CHECK_THROWS_AS(load_model(dir / "missing.dtssfn"), IoError);
}

TEST_CASE("corrupted containers") {
  const std::string good = serialize_model(trained().model);

  SUBCASE("flipped payload byte") {
    std::string bad = good;
    const auto pos = bad.find("\"q\":") + 4;
    bad[pos] = bad[pos] == '3' ? '4' : '3';
    CHECK_THROWS_AS(deserialize_model(bad), ChecksumError);
  }
  SUBCASE("truncated") { CHECK_THROWS_AS(deserialize_model(good.substr(0, good.size() / 2)), ChecksumError); }
  SUBCASE("wrong magic") { CHECK_THROWS_AS(deserialize_model("NOPE 1 00000000\n{}\n"), ParseError); }
  SUBCASE("wrong version") {
    std::string bad = good;
    bad[std::string("DTSSFN-MODEL ").size()] = '9';
    CHECK_THROWS_AS(deserialize_model(bad), ParseError);
  }
  SUBCASE("no header") { CHECK_THROWS_AS(deserialize_model("{}"), ParseError); }
}

TEST_CASE("hyperparameter JSON") {
  HyperParams hp;
  hp.lambda0 = 10;
  hp.gamma = 0.6;
  hp.bag = parse_bag("DCT, DB20,sym2");
  hp.method = MethodSpec::parse("random:17");
  hp.preprocess = PreprocessMode::ZScore;
  hp.admm_start = AdmmStart::Lfp;
  const json j = hyperparams_to_json(hp);
  CHECK(hyperparams_to_json(hyperparams_from_json(j)) == j);

  CHECK(hyperparams_from_json(json{{"bag", "Haar,DB4"}}).bag.size() == 2);
  CHECK(hyperparams_from_json(json{{"method", 1}}).method.method == SelectionMethod::Method1);
  CHECK(hyperparams_from_json(json{{"kmax", 7}}, hp).lambda0 == 10);
  CHECK_THROWS_AS(hyperparams_from_json(json{{"lamda0", 1}}), ConfigError);
  CHECK_THROWS_AS(hyperparams_from_json(json{{"mu", "big"}}), ConfigError);
  CHECK_THROWS_AS(hyperparams_from_json(json{{"kmax", -3}}), ConfigError);
  CHECK_THROWS_AS(hyperparams_from_json(json{{"bag", {"DCT", "FFT"}}}), ConfigError);
  CHECK_THROWS_AS(hyperparams_from_json(json{{"method", "3"}}), ConfigError);
  CHECK_THROWS_AS(parse_bag(" , "), ConfigError);
}

TEST_CASE("run config JSON") {
  RunConfig cfg;
  cfg.dataset.format = DatasetFormat::Csv;
  cfg.dataset.train = "a.csv";
  cfg.dataset.csv.delimiter = ';';
  cfg.dataset.csv.has_header = true;
  cfg.dataset.csv.label_name = "class";
  cfg.seed = 42;
  cfg.out = "runs/x";
  const json j = run_config_to_json(cfg);
  const RunConfig back = run_config_from_json(j);
  CHECK(run_config_to_json(back) == j);
  CHECK(back.dataset.csv.delimiter == ';');
  CHECK(back.dataset.csv.label_name == "class");

  CHECK_THROWS_AS(run_config_from_json(json{{"datset", json::object()}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json{{"dataset", {{"path", "x"}}}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json{{"dataset", {{"format", "arff"}}}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json{{"dataset", {{"delimiter", ";;"}}}}), ConfigError);
  CHECK_THROWS_AS(run_config_from_json(json::array()), ConfigError);
}

TEST_CASE("load_dataset") {
  DatasetSpec spec;
  spec.format = DatasetFormat::Synth;
  spec.classes = 2;
  spec.dims = 3;
  spec.samples_per_class = 10;
  spec.split_fraction = 0.5;
  const Dataset a = load_dataset(spec, 3);
  CHECK(a.x_train.cols() == 10);
  CHECK(a.x_test.cols() == 10);
  CHECK(a.p() == 3);
  CHECK(load_dataset(spec, 3).x_train == a.x_train);

  spec.train_subset = 4;
  CHECK(load_dataset(spec, 3).x_train.cols() == 4);

  DatasetSpec missing;
  missing.train = "/nonexistent/vowel.train";
  CHECK_THROWS_AS(load_dataset(missing, 0), IoError);
  missing.format = DatasetFormat::Idx;
  CHECK_THROWS_AS(load_dataset(missing, 0), ConfigError);
}
