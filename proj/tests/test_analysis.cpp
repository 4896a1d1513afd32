#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "graphmix/analysis.hpp"
#include "graphmix/mixup.hpp"
#include "graphmix/rng.hpp"

using namespace graphmix;

namespace {

Graph random_graph(int n, double p, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (rng.bernoulli(p)) edges.emplace_back(i, j);
    }
  }
  return Graph(n, std::move(edges));
}

StepGraphon random_graphon(int k, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd w(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) w(i, j) = w(j, i) = rng.uniform();
  }
  return StepGraphon{std::move(w), Eigen::MatrixXd::Ones(k, 1)};
}

StepGraphon constant_graphon(int k, double p) {
  return StepGraphon{Eigen::MatrixXd::Constant(k, k, p),
                     Eigen::MatrixXd::Ones(k, 1)};
}

// Oracle: count homomorphisms by walking every one of the n^v maps.
std::int64_t hom_count_oracle(const Motif& f, const Graph& g) {
  const int v = f.num_nodes();
  const int n = g.num_nodes();
  std::vector<int> image(v, 0);
  std::int64_t count = 0;
  while (true) {
    bool ok = true;
    for (const auto& [a, b] : f.pattern().edges()) {
      if (!g.has_edge(image[a], image[b])) {
        ok = false;
        break;
      }
    }
    if (ok) ++count;
    int pos = v - 1;
    while (pos >= 0 && image[pos] == n - 1) image[pos--] = 0;
    if (pos < 0) return count;
    ++image[pos];
  }
}

// Oracle: exact cut norm by checking all 2^k × 2^k vertex pairs.
double cut_norm_oracle(const Eigen::MatrixXd& d) {
  const int k = static_cast<int>(d.rows());
  double best = 0.0;
  for (std::uint32_t s = 0; s < (1U << k); ++s) {
    for (std::uint32_t t = 0; t < (1U << k); ++t) {
      double sum = 0.0;
      for (int i = 0; i < k; ++i) {
        if (!((s >> i) & 1U)) continue;
        for (int j = 0; j < k; ++j) {
          if ((t >> j) & 1U) sum += d(i, j);
        }
      }
      best = std::max(best, std::abs(sum));
    }
  }
  return best / (static_cast<double>(k) * k);
}

Eigen::MatrixXd random_signed_matrix(int k, std::uint64_t seed) {
  Rng rng(seed);
  Eigen::MatrixXd d(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) d(i, j) = 2.0 * rng.uniform() - 1.0;
  }
  return d;
}

}  // namespace

TEST_CASE("motif constructors") {
  CHECK(Motif::named("node").num_nodes() == 1);
  CHECK(Motif::named("edge").num_edges() == 1);
  CHECK(Motif::named("triangle").num_edges() == 3);
  CHECK(Motif::named("path3").num_nodes() == 3);
  CHECK(Motif::named("path3").num_edges() == 2);
  CHECK(Motif::named("cycle6").num_edges() == 6);

  const Motif parsed = Motif::parse("v=3; 0-1 1-2 2-0");
  CHECK(parsed.num_nodes() == 3);
  CHECK(parsed.num_edges() == 3);

  CHECK_THROWS_AS(Motif::parse("0-1 1-2"), std::invalid_argument);
  CHECK_THROWS_AS(Motif::named("blob"), std::invalid_argument);
  CHECK_THROWS_AS(Motif(Graph(9, {})), std::invalid_argument);
}

TEST_CASE("hom_count identities") {
  const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(hom_count(Motif::named("node"), k3) == 3);
  CHECK(hom_count(Motif::named("edge"), k3) == 6);
  CHECK(hom_count(Motif::named("triangle"), k3) == 6);

  // node -> |V|, edge -> 2|E|, triangle -> 6 * #triangles, on random graphs.
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(split_seed(42, seed));
    const int n = 1 + static_cast<int>(rng.below(8));
    const Graph g = random_graph(n, 0.5, split_seed(43, seed));
    CHECK(hom_count(Motif::named("node"), g) == n);
    CHECK(hom_count(Motif::named("edge"), g) == 2 * g.num_edges());
    std::int64_t triangles = 0;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) {
        for (int c = b + 1; c < n; ++c) {
          if (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c)) {
            ++triangles;
          }
        }
      }
    }
    CHECK(hom_count(Motif::named("triangle"), g) == 6 * triangles);
  }
}

TEST_CASE("hom_count equals exhaustive enumeration") {
  for (std::uint64_t trial = 0; trial < 60; ++trial) {
    Rng rng(split_seed(7000, trial));
    const int n = 1 + static_cast<int>(rng.below(6));
    const int v = 1 + static_cast<int>(rng.below(4));
    const Graph g = random_graph(n, 0.4 + 0.2 * rng.uniform(),
                                 split_seed(7001, trial));
    const Motif f(random_graph(v, 0.6, split_seed(7002, trial)));
    CHECK(hom_count(f, g) == hom_count_oracle(f, g));
  }
}

TEST_CASE("graph-side density") {
  const Graph k3(3, {{0, 1}, {1, 2}, {0, 2}});
  CHECK(hom_density_graph(Motif::named("node"), k3) == 1.0);
  CHECK(hom_density_graph(Motif::named("edge"), k3) ==
        doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(hom_density_graph(Motif::named("edge"), Graph(5, {})) == 0.0);

  // The fast paths (tree DP, triangle counting) agree with plain counting.
  for (std::uint64_t trial = 0; trial < 20; ++trial) {
    const Graph g = random_graph(6, 0.5, split_seed(7100, trial));
    for (const char* name : {"edge", "path3", "path4", "triangle"}) {
      const Motif f = Motif::named(name);
      const double direct = static_cast<double>(hom_count_oracle(f, g)) /
                            std::pow(6.0, f.num_nodes());
      CHECK(hom_density_graph(f, g) ==
            doctest::Approx(direct).epsilon(1e-12));
    }
  }
}

TEST_CASE("graphon-side density") {
  CHECK(hom_density_graphon(Motif::named("edge"), constant_graphon(5, 0.3)) ==
        doctest::Approx(0.3).epsilon(1e-12));
  CHECK(hom_density_graphon(Motif::named("triangle"),
                            constant_graphon(4, 0.5)) ==
        doctest::Approx(0.125).epsilon(1e-12));

  Eigen::MatrixXd w(2, 2);
  w << 1, 0, 0, 1;
  CHECK(hom_density_graphon(Motif::named("edge"),
                            StepGraphon{w, Eigen::MatrixXd::Ones(2, 1)}) ==
        doctest::Approx(0.5).epsilon(1e-12));

  // Disconnected motifs multiply: two disjoint edges on a constant graphon.
  const Motif two_edges = Motif::parse("v=4; 0-1 2-3");
  CHECK(hom_density_graphon(two_edges, constant_graphon(3, 0.4)) ==
        doctest::Approx(0.16).epsilon(1e-12));
}

TEST_CASE("degree_function") {
  Eigen::MatrixXd w(2, 2);
  w << 0.2, 0.4, 0.4, 0.8;
  const Eigen::VectorXd d =
      degree_function(StepGraphon{w, Eigen::MatrixXd::Ones(2, 1)});
  CHECK(d(0) == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(d(1) == doctest::Approx(0.6).epsilon(1e-12));

  CHECK(degree_function(constant_graphon(4, 0.5)) ==
        Eigen::VectorXd::Constant(4, 0.5));
  const Eigen::VectorXd c = degree_function(constant_graphon(4, 0.7));
  for (int i = 0; i < 4; ++i) {
    CHECK(c(i) == doctest::Approx(0.7).epsilon(1e-14));
  }
  CHECK(degree_function(constant_graphon(3, 0.0)) ==
        Eigen::VectorXd::Zero(3));
}

TEST_CASE("cut norm on pinned cases") {
  CHECK(cut_norm_exact(Eigen::MatrixXd::Constant(4, 4, 0.25)) ==
        doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cut_norm_exact(Eigen::MatrixXd::Zero(5, 5)) == 0.0);

  Eigen::MatrixXd d(2, 2);
  d << 1, -1, -1, 1;
  CHECK(cut_norm_exact(d) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(cut_norm_exact(d) == doctest::Approx(cut_norm_oracle(d)));
}

TEST_CASE("cut norm equals the exhaustive oracle on random matrices") {
  for (std::uint64_t trial = 0; trial < 25; ++trial) {
    const int k = 2 + static_cast<int>(trial % 5);
    const Eigen::MatrixXd d = random_signed_matrix(k, split_seed(81, trial));
    CHECK(cut_norm_exact(d) ==
          doctest::Approx(cut_norm_oracle(d)).epsilon(1e-12));
  }
}

TEST_CASE("cut norm symmetries") {
  for (std::uint64_t trial = 0; trial < 10; ++trial) {
    const Eigen::MatrixXd d = random_signed_matrix(7, split_seed(82, trial));
    const double base = cut_norm_exact(d);
    CHECK(cut_norm_exact(-d) == base);
    CHECK(cut_norm_exact(d.transpose()) == base);
    // Exact homogeneity for power-of-two scales.
    CHECK(cut_norm_exact(0.5 * d) == 0.5 * base);
    CHECK(cut_norm_exact(4.0 * d) == 4.0 * base);
    // General nonnegative scales hold to rounding.
    CHECK(cut_norm_exact(0.3 * d) ==
          doctest::Approx(0.3 * base).epsilon(1e-12));
  }
}

TEST_CASE("cut norm lower bound") {
  SUBCASE("matches the exact value with enough restarts") {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
      const int k = 3 + static_cast<int>(trial % 10);
      const Eigen::MatrixXd d =
          random_signed_matrix(k, split_seed(83, trial));
      const double exact = cut_norm_exact(d);
      const double lower = cut_norm_lower_bound(d, 50, split_seed(84, trial));
      CHECK(lower <= exact + 1e-12);
      CHECK(lower == doctest::Approx(exact).epsilon(1e-12));
    }
  }
  SUBCASE("constant matrices are exact from one restart") {
    CHECK(cut_norm_lower_bound(Eigen::MatrixXd::Constant(6, 6, 0.4), 1, 9) ==
          doctest::Approx(0.4).epsilon(1e-12));
  }
  SUBCASE("fixed seed, fixed value") {
    const Eigen::MatrixXd d = random_signed_matrix(9, 4242);
    CHECK(cut_norm_lower_bound(d, 1, 7) == cut_norm_lower_bound(d, 1, 7));
  }
}

TEST_CASE("lemma: density difference bounded by edge count times cut norm") {
  for (std::uint64_t trial = 0; trial < 40; ++trial) {
    Rng rng(split_seed(85, trial));
    const int k = 2 + static_cast<int>(rng.below(9));
    const StepGraphon w1 = random_graphon(k, split_seed(86, trial));
    const StepGraphon w2 = random_graphon(k, split_seed(87, trial));
    const double cut = cut_norm_exact(w1.w - w2.w);
    for (const char* name : {"edge", "triangle", "path3"}) {
      const Motif f = Motif::named(name);
      const double gap = std::abs(hom_density_graphon(f, w1) -
                                  hom_density_graphon(f, w2));
      CHECK(gap <= f.num_edges() * cut + 1e-12);
    }
  }
}

TEST_CASE("mixup density bound checker") {
  SUBCASE("identical graphons give a zero bound, satisfied") {
    const StepGraphon w = random_graphon(5, 11);
    const BoundReport report =
        check_theorem1(w, w, Motif::named("triangle"), 0.4);
    CHECK(report.satisfied);
    CHECK(report.lhs == 0.0);
    CHECK(report.rhs == 0.0);
  }
  SUBCASE("lambda = 1 pins the mixture to the first graphon") {
    const StepGraphon wg = random_graphon(5, 12);
    const StepGraphon wh = random_graphon(5, 13);
    const BoundReport report =
        check_theorem1(wg, wh, Motif::named("edge"), 1.0);
    CHECK(report.satisfied);
  }
  SUBCASE("random instances always satisfy the bound") {
    for (std::uint64_t trial = 0; trial < 30; ++trial) {
      Rng rng(split_seed(88, trial));
      const StepGraphon wg = random_graphon(6, split_seed(89, trial));
      const StepGraphon wh = random_graphon(6, split_seed(90, trial));
      const BoundReport report = check_theorem1(
          wg, wh, Motif::named("triangle"), rng.uniform());
      CHECK(report.satisfied);
    }
  }
  SUBCASE("size mismatch is an error") {
    CHECK_THROWS_AS(check_theorem1(random_graphon(4, 1), random_graphon(5, 2),
                                   Motif::named("edge"), 0.5),
                    std::invalid_argument);
  }
}

TEST_CASE("sampling concentration checker") {
  SUBCASE("zero graphon has zero densities and zero exceedance") {
    const BoundReport report = check_theorem2(
        constant_graphon(4, 0.0), Motif::named("triangle"), 50, 0.3, 20, 3);
    CHECK(report.satisfied);
    CHECK(report.lhs == 0.0);
  }
  SUBCASE("vacuous bounds are flagged") {
    // Small n and epsilon make the bound exceed 1.
    const BoundReport report = check_theorem2(
        constant_graphon(4, 0.5), Motif::named("triangle"), 5, 0.1, 10, 3);
    CHECK(report.vacuous);
    CHECK(report.satisfied);
  }
  SUBCASE("moderate run satisfies the bound") {
    const StepGraphon w = random_graphon(4, 21);
    const BoundReport report =
        check_theorem2(w, Motif::named("edge"), 1000, 0.2, 50, 9);
    CHECK(report.satisfied);
    CHECK_FALSE(report.vacuous);
  }
  SUBCASE("epsilon outside (0,1) is an error") {
    CHECK_THROWS_AS(check_theorem2(constant_graphon(2, 0.5),
                                   Motif::named("edge"), 10, 1.5, 5, 1),
                    std::invalid_argument);
  }
}

TEST_CASE("collision probability") {
  CHECK(collision_probability(constant_graphon(2, 0.5)).probability ==
        0.0625);
  CHECK(collision_probability(constant_graphon(3, 1.0)).probability == 1.0);
  CHECK(collision_probability(constant_graphon(3, 0.0)).probability == 1.0);

  // Log form survives where the plain product underflows.
  const CollisionProbability big =
      collision_probability(constant_graphon(50, 0.5));
  CHECK(big.log_probability ==
        doctest::Approx(2500.0 * std::log(0.5)).epsilon(1e-9));
  CHECK(big.probability == 0.0);  // below double range
}

TEST_CASE("step approximation error") {
  const StepGraphon w = random_graphon(12, 31);
  CHECK(step_approx_error(w, 12) == 0.0);
  // Dyadic constants average exactly; others only up to rounding.
  CHECK(step_approx_error(constant_graphon(16, 0.25), 4) == 0.0);
  CHECK(step_approx_error(constant_graphon(16, 0.42), 4) <= 1e-14);

  // Discretized product graphon: error shrinks as the partition refines.
  Eigen::MatrixXd xy(16, 16);
  for (int i = 0; i < 16; ++i) {
    for (int j = 0; j < 16; ++j) {
      xy(i, j) = ((i + 0.5) / 16.0) * ((j + 0.5) / 16.0);
    }
  }
  const StepGraphon fine{xy, Eigen::MatrixXd::Ones(16, 1)};
  const double e2 = step_approx_error(fine, 2);
  const double e4 = step_approx_error(fine, 4);
  const double e8 = step_approx_error(fine, 8);
  CHECK(e2 >= e4);
  CHECK(e4 >= e8);
  CHECK(e8 > 0.0);

  CHECK_THROWS_AS(step_approx_error(fine, 17), std::invalid_argument);
}
