#include "doctest.h"

#include "../support/oracles.hpp"
#include "dtssfn/data.hpp"
#include "dtssfn/error.hpp"
#include "dtssfn/network.hpp"

using namespace dtssfn;

namespace {

Dataset blobs(std::size_t classes, std::size_t dims, double spread, std::uint64_t seed) {
  const RawTable all = synth_blobs(classes, dims, 40, spread, seed);
  const auto s = split_indices(all.labels, 0.5, seed + 1);
  return make_dataset(take_columns(all, s.train), take_columns(all, s.test));
}

HyperParams small_hp() {
  HyperParams hp;
  hp.l_max = 4;
  hp.mu = 1.0;
  hp.bag = {TransformKind{TransformTag::Dct2}, TransformKind{TransformTag::Haar}, TransformKind{TransformTag::Dht}};
  return hp;
}

}  // namespace

TEST_CASE("accuracy") {
  CHECK(accuracy({1, 2, 3}, {1, 2, 3}) == 100.0);
  CHECK(accuracy({0, 0}, {1, 1}) == 0.0);
  CHECK(accuracy({0, 1, 2, 3}, {0, 1, 0, 0}) == 50.0);
  CHECK_THROWS_AS(accuracy({0}, {0, 1}), DimensionError);
}

TEST_CASE("argmax breaks ties toward the lower class") {
  Matrix s(3, 2);
  s << 1, 0, 2, 5, 2, 5;
  CHECK(argmax_columns(s) == Labels{1, 1});
}

TEST_CASE("huge eta_layer keeps only the ridge classifier") {
  const auto d = blobs(3, 5, 0.3, 1);
  HyperParams hp = small_hp();
  hp.eta_layer = 1e9;
  const auto m = train(d.x_train, d.t_train, hp);
  CHECK(m.layers.empty());
  CHECK(m.cost_trace.size() == 1);
  CHECK(m.architecture() == "5");
}

TEST_CASE("zero-layer model reads out the largest feature") {
  NetworkModel m;
  m.p = 3;
  m.q = 3;
  m.preprocessor.mode = PreprocessMode::None;
  m.final_output = Matrix::Identity(3, 3);
  Matrix x(3, 2);
  x << 0.1, 5, 0.9, 1, 0.3, 2;
  CHECK(predict(m, x) == Labels{1, 0});
}

TEST_CASE("separable blobs are fit perfectly") {
  const auto d = blobs(2, 4, 0.05, 3);
  const auto m = train(d.x_train, d.t_train, small_hp());
  CHECK(accuracy(predict(m, d.x_train), d.y_train) == 100.0);
}

TEST_CASE("training cost never increases") {
  for (std::uint64_t seed = 10; seed < 16; ++seed) {
    const auto d = blobs(4, 6, 0.8, seed);
    HyperParams hp = small_hp();
    hp.eta_layer = 1e-3;
    const auto m = train(d.x_train, d.t_train, hp);
    for (std::size_t l = 1; l < m.cost_trace.size(); ++l) CHECK(m.cost_trace[l] <= m.cost_trace[l - 1] + 1e-9);
  }
}

TEST_CASE("trained model bookkeeping") {
  const auto d = blobs(3, 7, 0.6, 21);
  HyperParams hp = small_hp();
  hp.eta_layer = 1e-4;
  const auto m = train(d.x_train, d.t_train, hp);
  REQUIRE_FALSE(m.layers.empty());
  CHECK(m.cost_trace.size() == m.layers.size() + 1);
  CHECK(m.log.size() == m.layers.size());
  for (std::size_t l = 0; l < m.layers.size(); ++l) {
    m.layers[l].check_consistency();
    CHECK(m.log[l].out_dim == m.layers[l].out_dim);
    CHECK(m.log[l].cost == m.cost_trace[l + 1]);
  }
  CHECK(m.final_output.rows() == 3);
  CHECK(static_cast<std::size_t>(m.final_output.cols()) == m.layers.back().out_dim);
  // Logged training accuracy is what predict gives on the training set.
  CHECK(m.log.back().train_accuracy == accuracy(predict(m, d.x_train), d.y_train));
  const auto trace = predict_trace(m, d.x_train);
  REQUIRE(trace.size() == m.layers.size() + 1);
  CHECK(accuracy(trace[0], d.y_train) == m.train_accuracy0);
  CHECK(trace.back() == predict(m, d.x_train));
}

TEST_CASE("prediction is per column and repeatable") {
  const auto d = blobs(3, 5, 0.7, 4);
  const auto m = train(d.x_train, d.t_train, small_hp());
  const Labels base = predict(m, d.x_test);
  CHECK(predict(m, d.x_test) == base);

  const Matrix reversed = d.x_test.rowwise().reverse();
  Labels flipped = predict(m, reversed);
  std::reverse(flipped.begin(), flipped.end());
  CHECK(flipped == base);

  CHECK_THROWS_AS(predict(m, Matrix::Zero(4, 2)), DimensionError);
}

TEST_CASE("training is deterministic") {
  const auto d = blobs(3, 6, 0.7, 8);
  HyperParams hp = small_hp();
  hp.method = MethodSpec::parse("1");
  const auto a = train(d.x_train, d.t_train, hp);
  const auto b = train(d.x_train, d.t_train, hp);
  CHECK(a.architecture() == b.architecture());
  CHECK(a.cost_trace == b.cost_trace);
  CHECK(a.final_output == b.final_output);
}

TEST_CASE("fixed and random methods") {
  const auto d = blobs(3, 6, 0.7, 9);
  HyperParams hp = small_hp();
  hp.eta_layer = 1e-4;
  hp.method = MethodSpec::parse("fixed:DST");
  const auto f = train(d.x_train, d.t_train, hp);
  REQUIRE_FALSE(f.layers.empty());
  for (const auto& l : f.layers) CHECK(l.transform == TransformKind{TransformTag::Dst1});
  CHECK(f.log.front().scores.empty());

  hp.method = MethodSpec::parse("random:5");
  const auto r = train(d.x_train, d.t_train, hp);
  REQUIRE(r.layers.size() >= 1);
  CHECK(r.layers[0].transform.tag == TransformTag::Random);
  if (r.layers.size() >= 2) CHECK_FALSE(r.layers[0].transform == r.layers[1].transform);
}

TEST_CASE("a flat layer stops growth with a warning") {
  // Two samples with identical features give zero variance everywhere.
  Matrix x = Matrix::Ones(4, 2);
  Matrix t(2, 2);
  t << 1, 0, 0, 1;
  HyperParams hp = small_hp();
  hp.lambda0 = 0.5;
  const auto m = train(x, t, hp);
  CHECK(m.layers.empty());
  CHECK_FALSE(m.warning.empty());
}

TEST_CASE("train input validation") {
  HyperParams hp;
  CHECK_THROWS_AS(train(Matrix::Ones(3, 4), Matrix::Ones(2, 5), hp), DimensionError);
  CHECK_THROWS_AS(train(Matrix::Ones(3, 1), Matrix::Ones(2, 1), hp), InsufficientSamplesError);
  hp.alpha = 0.5;
  CHECK_THROWS_AS(train(Matrix::Ones(3, 4), Matrix::Ones(2, 4), hp), ConfigError);
}

TEST_CASE("method spec parsing") {
  CHECK(MethodSpec::parse("1").method == SelectionMethod::Method1);
  CHECK(MethodSpec::parse("2").method == SelectionMethod::Method2);
  const auto f = MethodSpec::parse("fixed:db20");
  CHECK(f.method == SelectionMethod::Fixed);
  CHECK(f.fixed == TransformKind{TransformTag::Db20});
  const auto r = MethodSpec::parse("random:42");
  CHECK(r.seed == 42);
  for (const char* s : {"1", "2", "fixed:DB20", "random:42"}) CHECK(MethodSpec::parse(s).to_string() == s);
  for (const char* s : {"3", "fixed:nope", "random:", "random:x1", ""}) CHECK_THROWS_AS(MethodSpec::parse(s), ConfigError);
}
