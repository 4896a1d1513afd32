#include <doctest.h>

#include <cmath>
#include <set>

#include "graphmix/mixup.hpp"
#include "graphmix/rng.hpp"

using namespace graphmix;

namespace {

LabeledGraphon constant_graphon(int k, double p, double label0) {
  Eigen::VectorXd label(2);
  label << label0, 1.0 - label0;
  return LabeledGraphon{
      StepGraphon{Eigen::MatrixXd::Constant(k, k, p),
                  Eigen::MatrixXd::Constant(k, 1, p)},
      label};
}

LabeledGraphon random_labeled(int k, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd w(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) w(i, j) = w(j, i) = rng.uniform();
  }
  Eigen::MatrixXd x(k, 2);
  for (int i = 0; i < k; ++i) {
    x(i, 0) = rng.uniform();
    x(i, 1) = rng.uniform();
  }
  const double l = rng.uniform();
  Eigen::VectorXd label(2);
  label << l, 1.0 - l;
  return LabeledGraphon{StepGraphon{std::move(w), std::move(x)}, label};
}

}  // namespace

TEST_CASE("mix endpoints are bit-exact") {
  const LabeledGraphon a = random_labeled(6, 1);
  const LabeledGraphon b = random_labeled(6, 2);

  const LabeledGraphon at_one = mix_graphons(a, b, 1.0);
  CHECK(at_one.graphon.w == a.graphon.w);
  CHECK(at_one.graphon.x == a.graphon.x);
  CHECK(at_one.label == a.label);

  const LabeledGraphon at_zero = mix_graphons(a, b, 0.0);
  CHECK(at_zero.graphon.w == b.graphon.w);
  CHECK(at_zero.graphon.x == b.graphon.x);
  CHECK(at_zero.label == b.label);
}

TEST_CASE("mix arithmetic on constants") {
  const LabeledGraphon a = constant_graphon(4, 0.2, 1.0);
  const LabeledGraphon b = constant_graphon(4, 0.6, 0.0);
  const LabeledGraphon mix = mix_graphons(a, b, 0.25);
  CHECK(mix.graphon.w(2, 3) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(mix.label(0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(mix.label(1) == doctest::Approx(0.75).epsilon(1e-12));
}

TEST_CASE("mix is affine, bit for bit, at equal k") {
  const LabeledGraphon a = random_labeled(5, 3);
  const LabeledGraphon b = random_labeled(5, 4);
  for (const double lambda : {0.1, 0.3, 0.5, 0.9}) {
    const LabeledGraphon mix = mix_graphons(a, b, lambda);
    const Eigen::MatrixXd direct =
        lambda * a.graphon.w + (1.0 - lambda) * b.graphon.w;
    CHECK(mix.graphon.w == direct);
  }
}

TEST_CASE("mismatched partition counts meet in the middle") {
  const LabeledGraphon a = constant_graphon(4, 0.2, 1.0);
  const LabeledGraphon b = constant_graphon(8, 0.6, 0.0);
  const LabeledGraphon mix = mix_graphons(a, b, 0.5);
  CHECK(mix.graphon.k() == 6);  // round((4+8)/2)
  CHECK(mix.graphon.w(0, 0) == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("feature dimension mismatch is an error") {
  LabeledGraphon a = constant_graphon(4, 0.2, 1.0);
  LabeledGraphon b = constant_graphon(4, 0.6, 0.0);
  b.graphon.x = Eigen::MatrixXd::Ones(4, 3);
  CHECK_THROWS_AS(mix_graphons(a, b, 0.5), std::invalid_argument);
}

TEST_CASE("sampling endpoints") {
  SUBCASE("w = 1 gives the complete graph") {
    const Graph g = sample_graph(constant_graphon(3, 1.0, 1.0).graphon, 10, 5);
    CHECK(g.num_edges() == 45);
  }
  SUBCASE("w = 0 gives the empty graph") {
    const Graph g = sample_graph(constant_graphon(3, 0.0, 1.0).graphon, 10, 5);
    CHECK(g.num_edges() == 0);
  }
}

TEST_CASE("sampled edge density concentrates at one half") {
  // Binomial oracle: density over 500 samples of K=100 at w=0.5 stays
  // within 3 standard errors of 0.5.
  const StepGraphon w = constant_graphon(4, 0.5, 1.0).graphon;
  const int samples = 500, k = 100;
  const double pairs = k * (k - 1) / 2.0;
  long long edges = 0;
  for (int i = 0; i < samples; ++i) {
    edges += sample_graph(w, k, split_seed(77, i)).num_edges();
  }
  const double density = edges / (samples * pairs);
  const double se = std::sqrt(0.25 / (samples * pairs));
  CHECK(std::abs(density - 0.5) <= 3 * se);
}

TEST_CASE("sampled node features copy the block's graphon row") {
  Eigen::MatrixXd w(2, 2);
  w << 0.9, 0.1, 0.1, 0.9;
  Eigen::MatrixXd x(2, 2);
  x << 1.0, 2.0, 3.0, 4.0;
  const Graph g = sample_graph(StepGraphon{w, x}, 50, 99);
  REQUIRE(g.features());
  for (int i = 0; i < 50; ++i) {
    const double first = (*g.features())(i, 0);
    CHECK((first == 1.0 || first == 3.0));
    CHECK((*g.features())(i, 1) == first + 1.0);
  }
}

TEST_CASE("generate_set") {
  const LabeledGraphon g = random_labeled(4, 10);
  MixupConfig config;
  config.k = 12;
  config.seed = 2023;

  SUBCASE("count 0 gives an empty sequence") {
    config.count = 0;
    CHECK(generate_set(g, config).empty());
  }
  SUBCASE("same seed, same graphs; labels attached") {
    config.count = 5;
    const auto a = generate_set(g, config);
    const auto b = generate_set(g, config);
    REQUIRE(a.size() == 5);
    for (int i = 0; i < 5; ++i) {
      CHECK(a[i].first == b[i].first);
      CHECK(a[i].second == g.label);
    }
  }
  SUBCASE("different seeds diverge") {
    config.count = 1;
    int differing = 0;
    for (int trial = 0; trial < 10; ++trial) {
      config.seed = split_seed(50, trial);
      const auto a = generate_set(g, config);
      config.seed = split_seed(51, trial);
      const auto b = generate_set(g, config);
      if (!(a[0].first == b[0].first)) ++differing;
    }
    CHECK(differing == 10);
  }
}

TEST_CASE("graphon-driven edge perturbation") {
  std::vector<Edge> all;
  for (int i = 0; i < 100; ++i) {
    for (int j = i + 1; j < 100; ++j) all.emplace_back(i, j);
  }
  const Graph complete(100, all);

  SUBCASE("w = 1 keeps the graph") {
    const StepGraphon keep = constant_graphon(3, 1.0, 1.0).graphon;
    CHECK(dropedge_degenerate(complete, keep, 1) == complete);
  }
  SUBCASE("w = 0 clears the edges") {
    const StepGraphon clear = constant_graphon(3, 0.0, 1.0).graphon;
    CHECK(dropedge_degenerate(complete, clear, 1).num_edges() == 0);
  }
  SUBCASE("w = 0.5 halves the edges, binomially") {
    const StepGraphon half = constant_graphon(3, 0.5, 1.0).graphon;
    const int trials = 50;
    long long survived = 0;
    for (int t = 0; t < trials; ++t) {
      survived +=
          dropedge_degenerate(complete, half, split_seed(12, t)).num_edges();
    }
    const double total = static_cast<double>(trials) * complete.num_edges();
    const double se = std::sqrt(total * 0.25);
    CHECK(std::abs(survived - 0.5 * total) <= 3 * se);
  }
}

TEST_CASE("sampled graphs always satisfy the graph invariants") {
  for (int trial = 0; trial < 10; ++trial) {
    const LabeledGraphon g = random_labeled(3, split_seed(500, trial));
    const Graph sample = sample_graph(g.graphon, 17, split_seed(501, trial));
    CHECK(sample.num_nodes() == 17);
    for (const auto& [u, v] : sample.edges()) {
      CHECK(u < v);
      CHECK(v < 17);
      CHECK(u >= 0);
    }
  }
}
