#include "graphmix/mixup.hpp"

#include <cmath>
#include <stdexcept>

#include "graphmix/rng.hpp"

namespace graphmix {

void LabeledGraphon::validate() const {
  graphon.validate();
  if ((label.array() < 0.0).any() || std::abs(label.sum() - 1.0) > 1e-9) {
    throw std::invalid_argument(
        "LabeledGraphon: label must be nonnegative and sum to 1");
  }
}

void MixupConfig::validate() const {
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("MixupConfig: lambda must be in [0, 1]");
  }
  if (k < 1) throw std::invalid_argument("MixupConfig: k must be >= 1");
  if (count < 0) throw std::invalid_argument("MixupConfig: count >= 0");
}

namespace {

StepGraphon rescale(const StepGraphon& g, int k) {
  if (g.k() == k) return g;
  auto [w, x] = resize_to_grid(g.w, g.x, k);
  // Rescaling a float matrix can leave ulp-level asymmetry; restore it.
  return StepGraphon{(w + w.transpose()) / 2.0, std::move(x)};
}

}  // namespace

LabeledGraphon mix_graphons(const LabeledGraphon& a, const LabeledGraphon& b,
                            double lambda) {
  if (lambda < 0.0 || lambda > 1.0) {
    throw std::invalid_argument("mix_graphons: lambda must be in [0, 1]");
  }
  if (a.graphon.feature_dim() != b.graphon.feature_dim()) {
    throw std::invalid_argument("mix_graphons: feature dimension mismatch");
  }
  if (a.label.size() != b.label.size()) {
    throw std::invalid_argument("mix_graphons: label length mismatch");
  }

  const StepGraphon* ga = &a.graphon;
  const StepGraphon* gb = &b.graphon;
  StepGraphon resized_a, resized_b;
  if (a.graphon.k() != b.graphon.k()) {
    const int k = static_cast<int>(
        std::llround((a.graphon.k() + b.graphon.k()) / 2.0));
    resized_a = rescale(a.graphon, k);
    resized_b = rescale(b.graphon, k);
    ga = &resized_a;
    gb = &resized_b;
  }

  const double mu = 1.0 - lambda;
  LabeledGraphon out{
      StepGraphon{lambda * ga->w + mu * gb->w, lambda * ga->x + mu * gb->x},
      lambda * a.label + mu * b.label};
  out.validate();
  return out;
}

Graph sample_graph(const StepGraphon& graphon, int k, std::uint64_t seed) {
  graphon.validate();
  if (k < 1) throw std::invalid_argument("sample_graph: k must be >= 1");

  Rng rng(seed);
  const int blocks = graphon.k();

  std::vector<int> block(k);
  for (int i = 0; i < k; ++i) {
    block[i] = std::min(static_cast<int>(rng.uniform() * blocks), blocks - 1);
  }

  std::vector<Edge> edges;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (rng.bernoulli(graphon.w(block[i], block[j]))) {
        edges.emplace_back(i, j);
      }
    }
  }

  Eigen::MatrixXd features(k, graphon.feature_dim());
  for (int i = 0; i < k; ++i) features.row(i) = graphon.x.row(block[i]);

  return Graph(k, std::move(edges), std::move(features));
}

std::vector<std::pair<Graph, Eigen::VectorXd>> generate_set(
    const LabeledGraphon& graphon, const MixupConfig& config) {
  config.validate();
  graphon.validate();
  std::vector<std::pair<Graph, Eigen::VectorXd>> out;
  out.reserve(config.count);
  for (int i = 0; i < config.count; ++i) {
    out.emplace_back(
        sample_graph(graphon.graphon, config.k, split_seed(config.seed, i)),
        graphon.label);
  }
  return out;
}

Graph dropedge_degenerate(const Graph& g, const StepGraphon& w,
                          std::uint64_t seed) {
  w.validate();
  const int n = g.num_nodes();
  const AlignedGraph aligned = align_by_degree(g);
  std::vector<int> rank(n);
  for (int r = 0; r < n; ++r) rank[aligned.permutation[r]] = r;
  const auto block = [&](int node) {
    return static_cast<int>(static_cast<long long>(rank[node]) * w.k() / n);
  };

  Rng rng(seed);
  std::vector<Edge> kept;
  kept.reserve(g.edges().size());
  for (const auto& [u, v] : g.edges()) {
    if (rng.bernoulli(w.w(block(u), block(v)))) kept.emplace_back(u, v);
  }
  return Graph(n, std::move(kept), g.features(), g.label(), g.soft_label());
}

}  // namespace graphmix
