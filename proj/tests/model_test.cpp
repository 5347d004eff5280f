#include <doctest.h>

#include <cstdio>

#include "lcae/kernels.hpp"
#include "lcae/model.hpp"
#include "lcae/trainer.hpp"

#include "oracles.hpp"
#include "properties.hpp"
#include "test_util.hpp"

using lcae::LcaeModel;
using lcae::Mat;
using lcae::SplitMix64;

namespace {

LcaeModel random_model(std::uint64_t seed, int n = 8, int h1 = 5, int h2 = 3, int c = 2) {
  SplitMix64 rng(seed);
  LcaeModel m;
  m.sizes = {n, h1, h2, c};
  m.W1 = testutil::random_mat(rng, h1, n + 1, 0.5);
  m.W2 = testutil::random_mat(rng, h2, h1, 0.5);
  m.W2p = testutil::random_mat(rng, h1, h2, 0.5);
  m.W1p = testutil::random_mat(rng, n, h1, 0.5);
  m.D = testutil::random_mat(rng, c, h2, 0.5);
  m.norm.mean.assign(n, 0.0);
  m.norm.scale.assign(n, 1.0);
  return m;
}

}  // namespace

TEST_CASE("encode with zero weights saturates at one half") {
  auto model = random_model(1);
  model.W1 = Mat(5, 9);
  model.W2 = Mat(3, 5);
  SplitMix64 rng(2);
  Mat x = testutil::random_mat(rng, 8, 4);
  Mat code = lcae::encode(model, x);
  for (std::size_t k = 0; k < code.size(); ++k) CHECK(code.data()[k] == doctest::Approx(0.5));
}

TEST_CASE("encode matches the step-by-step composition") {
  auto model = random_model(3);
  SplitMix64 rng(4);
  Mat x = testutil::random_mat(rng, 8, 1);
  Mat expected = lcae::sigmoid(
      oracle::mul(model.W2, lcae::sigmoid(oracle::mul(model.W1, lcae::with_bias_row(x)))));
  Mat got = lcae::encode(model, x);
  CHECK(testutil::max_abs_diff(got, expected) < 1e-14);
  for (std::size_t k = 0; k < got.size(); ++k) {
    CHECK(got.data()[k] > 0.0);
    CHECK(got.data()[k] < 1.0);
  }
}

TEST_CASE("encode is column independent") {
  auto model = random_model(5);
  SplitMix64 rng(6);
  Mat batch = testutil::random_mat(rng, 8, 6);
  Mat whole = lcae::encode(model, batch);
  for (int j = 0; j < 6; ++j) {
    Mat single = lcae::encode(model, lcae::col_range(batch, j, 1));
    for (int i = 0; i < whole.rows(); ++i) CHECK(whole(i, j) == single(i, 0));
  }
}

TEST_CASE("decode special cases and oracle") {
  auto model = random_model(7);
  SplitMix64 rng(8);
  Mat code = testutil::random_mat_in(rng, 3, 4, 0.1, 0.9);

  SUBCASE("zero output weights give zero output") {
    model.W1p = Mat(8, 5);
    CHECK(lcae::frob_norm(lcae::decode(model, code)) == 0.0);
  }
  SUBCASE("zero inner weights pass 0.5 through the output layer") {
    model.W2p = Mat(5, 3);
    Mat half(5, 4, 0.5);
    Mat expected = oracle::mul(model.W1p, half);
    CHECK(testutil::max_abs_diff(lcae::decode(model, code), expected) < 1e-14);
  }
  SUBCASE("random weights match the composition") {
    Mat expected = oracle::mul(model.W1p, lcae::sigmoid(oracle::mul(model.W2p, code)));
    CHECK(testutil::max_abs_diff(lcae::decode(model, code), expected) < 1e-14);
  }
}

TEST_CASE("shape mismatches are rejected") {
  auto model = random_model(9);
  Mat wrong(7, 2);
  CHECK_THROWS_AS(lcae::encode(model, wrong), std::invalid_argument);
  CHECK_THROWS_AS(lcae::decode(model, wrong), std::invalid_argument);
}

TEST_CASE("reconstruct with zero weights is constant per column") {
  auto model = random_model(10);
  model.W1 = Mat(5, 9);
  model.W2 = Mat(3, 5);
  model.W2p = Mat(5, 3);
  auto phi = lcae::SensingMatrix::generate(4, 8, 2, 77);
  SplitMix64 rng(11);
  Mat b = lcae::compress(phi, testutil::random_mat(rng, 8, 3));
  Mat out = lcae::reconstruct(model, phi, b);
  Mat expected_col = oracle::mul(model.W1p, Mat(5, 1, 0.5));
  for (int j = 0; j < 3; ++j)
    for (int i = 0; i < 8; ++i) CHECK(out(i, j) == doctest::Approx(expected_col(i, 0)));
}

TEST_CASE("reconstruct is deterministic") {
  auto model = random_model(12);
  auto phi = lcae::SensingMatrix::generate(4, 8, 2, 13);
  SplitMix64 rng(14);
  Mat b = lcae::compress(phi, testutil::random_mat(rng, 8, 5));
  CHECK(testutil::bitwise_equal(lcae::reconstruct(model, phi, b),
                                lcae::reconstruct(model, phi, b)));
}

TEST_CASE("predict_scores is D applied to the code") {
  auto model = random_model(15);
  SplitMix64 rng(16);
  Mat x = testutil::random_mat(rng, 8, 4);

  auto scores = lcae::predict_scores(model, x);
  Mat expected = oracle::mul(model.D, lcae::encode(model, x));
  CHECK(testutil::max_abs_diff(scores.scores, expected) < 1e-14);

  model.D = Mat(2, 3);
  auto zero_scores = lcae::predict_scores(model, x);
  CHECK(lcae::frob_norm(zero_scores.scores) == 0.0);

  auto one_class = random_model(17, 8, 5, 3, 1);
  auto row = lcae::predict_scores(one_class, x);
  CHECK(row.scores.rows() == 1);
  CHECK(row.scores.cols() == 4);
}

TEST_CASE("classify_sequence basics") {
  Mat single(3, 1);
  single(0, 0) = 0.1;
  single(1, 0) = 0.9;
  single(2, 0) = 0.3;
  CHECK(lcae::classify_sequence({single}) == 1);

  // rows average to the same value: lowest index wins
  Mat tie(2, 2);
  tie(0, 0) = 0.4; tie(0, 1) = 0.6;
  tie(1, 0) = 0.6; tie(1, 1) = 0.4;
  CHECK(lcae::classify_sequence({tie}) == 0);

  SplitMix64 rng(18);
  Mat scores = testutil::random_mat(rng, 3, 4);
  int expected = 0;
  double best = -1e300;
  for (int i = 0; i < 3; ++i) {
    double mean = 0.0;
    for (int j = 0; j < 4; ++j) mean += scores(i, j) / 4.0;
    if (mean > best) { best = mean; expected = i; }
  }
  CHECK(lcae::classify_sequence({scores}) == expected);

  CHECK_THROWS_AS(lcae::classify_sequence({Mat()}), std::invalid_argument);
}

TEST_CASE("model save/load round-trips bit-exactly") {
  auto model = random_model(19);
  model.norm.mean[2] = 1.25;
  model.norm.scale[5] = 0.75;
  const std::string path = "model_roundtrip_test.bin";
  lcae::save_model(model, path);
  auto loaded = lcae::load_model(path);
  CHECK(loaded.sizes.n == model.sizes.n);
  CHECK(loaded.sizes.h1 == model.sizes.h1);
  CHECK(loaded.sizes.h2 == model.sizes.h2);
  CHECK(loaded.sizes.c == model.sizes.c);
  CHECK(loaded.norm.mean == model.norm.mean);
  CHECK(loaded.norm.scale == model.norm.scale);
  CHECK(testutil::bitwise_equal(loaded.W1, model.W1));
  CHECK(testutil::bitwise_equal(loaded.W2, model.W2));
  CHECK(testutil::bitwise_equal(loaded.W2p, model.W2p));
  CHECK(testutil::bitwise_equal(loaded.W1p, model.W1p));
  CHECK(testutil::bitwise_equal(loaded.D, model.D));
  std::remove(path.c_str());
}

TEST_CASE("load_model rejects foreign files") {
  const std::string path = "model_bad_test.bin";
  std::FILE* f = std::fopen(path.c_str(), "wb");
  std::fputs("definitely not a model", f);
  std::fclose(f);
  CHECK_THROWS_AS(lcae::load_model(path), std::runtime_error);
  std::remove(path.c_str());
}

TEST_CASE("model invariant suite") {
  auto failures = properties::model_suite(100, 4096);
  for (const auto& f : failures) MESSAGE(f);
  CHECK(failures.empty());
}
