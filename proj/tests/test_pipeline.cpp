#include <doctest.h>

#include <algorithm>
#include <vector>

#include "graphmix/mixup.hpp"
#include "graphmix/pipeline.hpp"
#include "graphmix/rng.hpp"

using namespace graphmix;

namespace {

StepGraphon block_graphon(double intra, double inter) {
  Eigen::MatrixXd w(2, 2);
  w << intra, inter, inter, intra;
  return StepGraphon{w, Eigen::MatrixXd::Ones(2, 1)};
}

Dataset synthetic_dataset(int per_class, int nodes, std::uint64_t seed) {
  const StepGraphon class0 = block_graphon(0.7, 0.1);
  const StepGraphon class1 = block_graphon(0.3, 0.5);
  Dataset ds;
  ds.name = "synthetic";
  ds.num_classes = 2;
  for (int i = 0; i < per_class; ++i) {
    ds.graphs.push_back(
        sample_graph(class0, nodes, split_seed(seed, 2 * i)).with_label(0));
    ds.graphs.push_back(
        sample_graph(class1, nodes, split_seed(seed, 2 * i + 1))
            .with_label(1));
  }
  return ds;
}

bool datasets_equal(const Dataset& a, const Dataset& b) {
  if (a.graphs.size() != b.graphs.size()) return false;
  for (std::size_t i = 0; i < a.graphs.size(); ++i) {
    if (!(a.graphs[i] == b.graphs[i])) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("batch quotas") {
  CHECK(batch_quotas(200, 10) == std::vector<long long>(10, 20));
  CHECK(batch_quotas(7, 3) == std::vector<long long>{2, 2, 3});
  CHECK(batch_quotas(0, 2) == std::vector<long long>{0, 0});
}

TEST_CASE("aug_ratio zero returns the input unchanged") {
  const Dataset ds = synthetic_dataset(10, 12, 1);
  PipelineConfig config;
  config.aug_ratio = 0.0;
  CHECK(datasets_equal(run_mixup(ds, config), ds));
}

TEST_CASE("whole-set run meets the augmentation contract") {
  const Dataset ds = synthetic_dataset(25, 15, 2);  // 50 graphs
  PipelineConfig config;
  config.seed = 99;
  config.estimator.method = EstimatorMethod::mean;

  const Dataset out = run_mixup(ds, config);
  CHECK(out.graphs.size() == 60);  // 50 + round(0.2 * 50)
  CHECK_NOTHROW(out.validate());

  // Originals pass through untouched and in order.
  for (std::size_t i = 0; i < ds.graphs.size(); ++i) {
    CHECK(out.graphs[i] == ds.graphs[i]);
  }
  // Synthetics carry soft labels over both classes summing to one.
  for (std::size_t i = ds.graphs.size(); i < out.graphs.size(); ++i) {
    REQUIRE(out.graphs[i].soft_label());
    const Eigen::VectorXd& soft = *out.graphs[i].soft_label();
    CHECK(soft.size() == 2);
    CHECK(soft.sum() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(soft.minCoeff() > 0.0);
    // lambda in [0.1, 0.2] weights class 0; class 1 dominates.
    CHECK(soft(1) >= 0.8);
    CHECK(*out.graphs[i].label() == 1);
  }

  // Same seed, same output; different seed, different synthetics.
  CHECK(datasets_equal(run_mixup(ds, config), out));
  PipelineConfig other = config;
  other.seed = 100;
  CHECK_FALSE(datasets_equal(run_mixup(ds, other), out));
}

TEST_CASE("a collapsed lambda range degenerates to the second class") {
  const Dataset ds = synthetic_dataset(20, 12, 3);
  PipelineConfig config;
  config.lambda_low = 0.0;
  config.lambda_high = 0.0;
  config.estimator.method = EstimatorMethod::mean;

  const Dataset out = run_mixup(ds, config);
  for (std::size_t i = ds.graphs.size(); i < out.graphs.size(); ++i) {
    const Eigen::VectorXd& soft = *out.graphs[i].soft_label();
    CHECK(soft(0) == 0.0);
    CHECK(soft(1) == 1.0);
  }
}

TEST_CASE("batch mode") {
  const Dataset ds = synthetic_dataset(30, 12, 4);  // 60 graphs
  PipelineConfig config;
  config.seed = 7;
  config.estimator.method = EstimatorMethod::mean;

  SUBCASE("batch_size >= |S| matches the whole-set run exactly") {
    config.batch_size = 60;
    CHECK(datasets_equal(run_mixup_batch(ds, config), run_mixup(ds, config)));
    config.batch_size = 1000;
    CHECK(datasets_equal(run_mixup_batch(ds, config), run_mixup(ds, config)));
  }
  SUBCASE("smaller batches still hit the total contract") {
    config.batch_size = 16;
    const Dataset out = run_mixup_batch(ds, config);
    CHECK(out.graphs.size() == 72);  // 60 + round(0.2 * 60)
    CHECK_NOTHROW(out.validate());
    CHECK(datasets_equal(run_mixup_batch(ds, config), out));
  }
  SUBCASE("single-class batches are skipped, quota redistributed") {
    // Sort by label: batch 0 is pure class 0, batch 2 pure class 1, and
    // only the middle batch can mix, so it absorbs the full quota.
    Dataset sorted = ds;
    std::stable_sort(sorted.graphs.begin(), sorted.graphs.end(),
                     [](const Graph& a, const Graph& b) {
                       return *a.label() < *b.label();
                     });
    config.batch_size = 25;
    const Dataset out = run_mixup_batch(sorted, config);
    CHECK(out.graphs.size() == 72);
    CHECK_NOTHROW(out.validate());

    // A fully single-class batching cannot mix at all.
    config.batch_size = 10;
    CHECK_THROWS_AS(run_mixup_batch(sorted, config), std::invalid_argument);
  }
}

TEST_CASE("single-class datasets cannot mix") {
  Dataset ds;
  ds.name = "one";
  ds.num_classes = 1;
  for (int i = 0; i < 4; ++i) {
    ds.graphs.push_back(
        sample_graph(block_graphon(0.5, 0.5), 8, i).with_label(0));
  }
  PipelineConfig config;
  CHECK_THROWS_AS(run_mixup(ds, config), std::invalid_argument);
}

TEST_CASE("sample_k controls generated graph size") {
  const Dataset ds = synthetic_dataset(10, 14, 6);
  PipelineConfig config;
  config.estimator.method = EstimatorMethod::mean;
  config.sample_k = 9;
  const Dataset out = run_mixup(ds, config);
  for (std::size_t i = ds.graphs.size(); i < out.graphs.size(); ++i) {
    CHECK(out.graphs[i].num_nodes() == 9);
  }
}

TEST_CASE("config validation") {
  PipelineConfig config;
  config.lambda_low = 0.5;
  config.lambda_high = 0.2;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.lambda_high = 0.8;
  config.aug_ratio = -0.1;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
  config.aug_ratio = 0.2;
  config.batch_size = 0;
  CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}
