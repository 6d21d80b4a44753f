#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <limits>

#include "frgame/classifier.hpp"
#include "frgame/error.hpp"
#include "frgame/signal.hpp"
#include "oracles.hpp"

using namespace frgame;
using namespace frgame::test;

namespace {

struct Batch {
  Eigen::MatrixXd x;
  std::vector<int> y;
};

Batch clean_batch(int n, std::uint64_t seed = 1) {
  ChannelConfig cfg;
  cfg.snr_db_min = 5.0;
  cfg.snr_db_max = 5.0;
  cfg.seed = seed;
  const auto data = generate_dataset(cfg, 1, n);
  return Batch{data[0].x, data[0].labels};
}

}  // namespace

TEST_CASE("softmax probabilities sum to one") {
  const ClassifierModel model = init_classifier(ClassifierConfig{}, 3);
  const Batch b = clean_batch(64);
  const Eigen::MatrixXd p = forward_probabilities(model, b.x);
  for (Eigen::Index r = 0; r < p.rows(); ++r) {
    CHECK(std::abs(p.row(r).sum() - 1.0) <= 1e-9);
    CHECK(p.row(r).minCoeff() >= 0.0);
  }
}

TEST_CASE("zero epochs leave the weights untouched") {
  const ClassifierModel model = init_classifier(ClassifierConfig{}, 3);
  const Batch b = clean_batch(32);
  const ClassifierModel out = train_local(model, b.x, b.y, 0, AdamConfig{}, 7);
  CHECK(out.w1 == model.w1);
  CHECK(out.b1 == model.b1);
  CHECK(out.w2 == model.w2);
  CHECK(out.b2 == model.b2);
}

TEST_CASE("analytic gradients match central finite differences") {
  const ClassifierModel model = init_classifier(ClassifierConfig{}, 11);
  const Batch b = clean_batch(10, 4);
  CHECK(max_gradient_relative_error(model, b.x, b.y) <= 1e-4);
}

TEST_CASE("gradients after some training still match finite differences") {
  ClassifierModel model = init_classifier(ClassifierConfig{}, 5);
  Batch b = clean_batch(64, 9);
  model = train_local(model, b.x, b.y, 3, AdamConfig{}, 13);
  const Batch small = clean_batch(10, 10);
  CHECK(max_gradient_relative_error(model, small.x, small.y) <= 1e-4);
}

TEST_CASE("training separates noiseless constellations") {
  ChannelConfig cfg;
  cfg.snr_db_min = cfg.snr_db_max = std::numeric_limits<double>::infinity();
  cfg.phase_jitter_bound = 0.0;
  cfg.seed = 2;
  const auto data = generate_dataset(cfg, 1, 200);
  ClassifierModel model = init_classifier(ClassifierConfig{}, 1);
  model = train_local(model, data[0].x, data[0].labels, 50, AdamConfig{}, 3);
  CHECK(evaluate_accuracy(model, data[0].x, data[0].labels) >= 0.99);
}

TEST_CASE("dropout at rate zero is independent of the dropout seed") {
  ClassifierConfig cfg;
  cfg.dropout_rate = 0.0;
  const ClassifierModel model = init_classifier(cfg, 21);
  const Batch b = clean_batch(64, 21);
  const ClassifierModel a = train_local(model, b.x, b.y, 2, AdamConfig{}, 5, 1111);
  const ClassifierModel c = train_local(model, b.x, b.y, 2, AdamConfig{}, 5, 2222);
  CHECK(a.w1 == c.w1);
  CHECK(a.w2 == c.w2);

  ClassifierConfig with;
  with.dropout_rate = 0.1;
  const ClassifierModel base = init_classifier(with, 21);
  const ClassifierModel d = train_local(base, b.x, b.y, 2, AdamConfig{}, 5, 1111);
  const ClassifierModel e = train_local(base, b.x, b.y, 2, AdamConfig{}, 5, 2222);
  CHECK(d.w1 != e.w1);  // masks actually applied
}

TEST_CASE("training is deterministic given the seed") {
  const ClassifierModel model = init_classifier(ClassifierConfig{}, 30);
  const Batch b = clean_batch(128, 30);
  const ClassifierModel a = train_local(model, b.x, b.y, 2, AdamConfig{}, 77);
  const ClassifierModel c = train_local(model, b.x, b.y, 2, AdamConfig{}, 77);
  CHECK(a.w1 == c.w1);
  CHECK(a.b1 == c.b1);
  CHECK(a.w2 == c.w2);
  CHECK(a.b2 == c.b2);
}

TEST_CASE("a non-finite loss raises a diverged-training error") {
  const ClassifierModel model = init_classifier(ClassifierConfig{}, 8);
  const Batch b = clean_batch(64, 8);
  AdamConfig adam;
  adam.learning_rate = 1e200;
  CHECK_THROWS_AS(train_local(model, b.x, b.y, 3, adam, 1), DivergedTrainingError);
}

TEST_CASE("flatten/unflatten round-trip") {
  const ClassifierModel model = init_classifier(ClassifierConfig{}, 15);
  const ClassifierModel back = ClassifierModel::unflatten(model.config, model.flatten());
  CHECK(back.w1 == model.w1);
  CHECK(back.b1 == model.b1);
  CHECK(back.w2 == model.w2);
  CHECK(back.b2 == model.b2);
}

TEST_CASE("prediction ties resolve to the lower class") {
  ClassifierModel zero = init_classifier(ClassifierConfig{}, 1);
  zero.w1.setZero();
  zero.b1.setZero();
  zero.w2.setZero();
  zero.b2.setZero();
  const Batch b = clean_batch(50, 2);
  int zeros = 0;
  for (const int y : b.y) zeros += y == 0 ? 1 : 0;
  CHECK(evaluate_accuracy(zero, b.x, b.y) ==
        doctest::Approx(static_cast<double>(zeros) / 50.0).epsilon(1e-12));
}
