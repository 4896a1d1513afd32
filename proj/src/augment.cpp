#include "graphmix/augment.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>
#include <vector>

#include "graphmix/rng.hpp"

namespace graphmix {

namespace {

// ceil with a small epsilon so ratios like 0.1*30 don't pick up an extra
// node from float noise.
int scaled_ceil(double ratio, int n) {
  return static_cast<int>(std::ceil(ratio * n - 1e-9));
}

// First `count` entries of a seeded partial Fisher-Yates shuffle of 0..n-1.
std::vector<int> sample_without_replacement(int n, int count, Rng& rng) {
  std::vector<int> pool(n);
  for (int i = 0; i < n; ++i) pool[i] = i;
  for (int i = 0; i < count; ++i) {
    const int j = i + static_cast<int>(rng.below(n - i));
    std::swap(pool[i], pool[j]);
  }
  pool.resize(count);
  return pool;
}

Eigen::MatrixXd select_rows(const Eigen::MatrixXd& m,
                            const std::vector<int>& rows) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(rows.size()), m.cols());
  for (std::size_t i = 0; i < rows.size(); ++i) out.row(i) = m.row(rows[i]);
  return out;
}

Graph induced_subgraph(const Graph& g, std::vector<int> keep) {
  std::sort(keep.begin(), keep.end());
  std::vector<int> new_id(g.num_nodes(), -1);
  for (std::size_t i = 0; i < keep.size(); ++i) {
    new_id[keep[i]] = static_cast<int>(i);
  }
  std::vector<Edge> edges;
  for (const auto& [u, v] : g.edges()) {
    if (new_id[u] >= 0 && new_id[v] >= 0) {
      edges.emplace_back(new_id[u], new_id[v]);
    }
  }
  std::optional<Eigen::MatrixXd> features;
  if (g.features()) features = select_rows(*g.features(), keep);
  return Graph(static_cast<int>(keep.size()), std::move(edges),
               std::move(features), g.label(), g.soft_label());
}

}  // namespace

void CorruptionSpec::validate() const {
  if (ratio < 0.0 || ratio > 1.0) {
    throw std::invalid_argument("CorruptionSpec: ratio must be in [0, 1]");
  }
}

Graph drop_edge(const Graph& g, double p, std::uint64_t seed) {
  if (p < 0.0 || p > 1.0) {
    throw std::invalid_argument("drop_edge: p must be in [0, 1]");
  }
  Rng rng(seed);
  std::vector<Edge> kept;
  kept.reserve(g.edges().size());
  for (const Edge& e : g.edges()) {
    if (!rng.bernoulli(p)) kept.push_back(e);
  }
  return Graph(g.num_nodes(), std::move(kept), g.features(), g.label(),
               g.soft_label());
}

Graph drop_node(const Graph& g, double p, std::uint64_t seed) {
  if (p < 0.0 || p >= 1.0) {
    throw std::invalid_argument("drop_node: p must be in [0, 1)");
  }
  const int n = g.num_nodes();
  const int removals = scaled_ceil(p, n);
  if (removals >= n) {
    throw std::invalid_argument("drop_node: would remove all nodes");
  }
  Rng rng(seed);
  const std::vector<int> removed =
      sample_without_replacement(n, removals, rng);
  std::vector<char> is_removed(n, 0);
  for (int v : removed) is_removed[v] = 1;
  std::vector<int> keep;
  keep.reserve(n - removals);
  for (int v = 0; v < n; ++v) {
    if (!is_removed[v]) keep.push_back(v);
  }
  return induced_subgraph(g, std::move(keep));
}

RandomWalkSubgraph subgraph_rw(const Graph& g, double keep_ratio,
                               std::uint64_t seed) {
  if (keep_ratio <= 0.0 || keep_ratio > 1.0) {
    throw std::invalid_argument("subgraph_rw: keep_ratio must be in (0, 1]");
  }
  const int n = g.num_nodes();
  if (n < 1) {
    throw std::invalid_argument("subgraph_rw: graph has no nodes");
  }
  const int target = std::max(1, scaled_ceil(keep_ratio, n));
  const long long stall_cap = 100LL * n;

  Rng rng(seed);
  const auto adj = g.adjacency_lists();
  const int start = static_cast<int>(rng.below(n));

  std::vector<char> visited(n, 0);
  std::vector<int> nodes;
  visited[start] = 1;
  nodes.push_back(start);

  int current = start;
  for (long long step = 0;
       step < stall_cap && static_cast<int>(nodes.size()) < target; ++step) {
    const auto& nb = adj[current];
    if (nb.empty() || rng.bernoulli(0.15)) {
      current = start;
      continue;
    }
    current = nb[rng.below(nb.size())];
    if (!visited[current]) {
      visited[current] = 1;
      nodes.push_back(current);
    }
  }

  RandomWalkSubgraph out;
  out.reached_target = static_cast<int>(nodes.size()) >= target;
  out.graph = induced_subgraph(g, std::move(nodes));
  return out;
}

namespace {

Graph corrupt_edges_remove(const Graph& g, double ratio, Rng& rng) {
  const int m = g.num_edges();
  const int removals = static_cast<int>(std::llround(ratio * m));
  const std::vector<int> removed =
      sample_without_replacement(m, removals, rng);
  std::vector<char> gone(m, 0);
  for (int e : removed) gone[e] = 1;
  std::vector<Edge> kept;
  kept.reserve(m - removals);
  for (int e = 0; e < m; ++e) {
    if (!gone[e]) kept.push_back(g.edges()[e]);
  }
  return Graph(g.num_nodes(), std::move(kept), g.features(), g.label(),
               g.soft_label());
}

Graph corrupt_edges_add(const Graph& g, double ratio, Rng& rng) {
  const int n = g.num_nodes();
  const long long pairs = static_cast<long long>(n) * (n - 1) / 2;
  const long long available = pairs - g.num_edges();
  const long long additions = std::llround(ratio * g.num_edges());
  if (additions > available) {
    throw std::invalid_argument(
        "corrupt: not enough non-edges to add the requested count");
  }

  std::vector<Edge> edges = g.edges();
  if (additions > available / 2) {
    // Dense case: enumerate every non-edge and take a random prefix.
    std::vector<Edge> non_edges;
    non_edges.reserve(available);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (!g.has_edge(u, v)) non_edges.emplace_back(u, v);
      }
    }
    for (long long i = 0; i < additions; ++i) {
      const long long j = i + static_cast<long long>(
                                  rng.below(non_edges.size() - i));
      std::swap(non_edges[i], non_edges[j]);
      edges.push_back(non_edges[i]);
    }
  } else {
    std::set<Edge> chosen;
    while (static_cast<long long>(chosen.size()) < additions) {
      int u = static_cast<int>(rng.below(n));
      int v = static_cast<int>(rng.below(n));
      if (u == v) continue;
      if (u > v) std::swap(u, v);
      if (g.has_edge(u, v) || !chosen.emplace(u, v).second) continue;
    }
    edges.insert(edges.end(), chosen.begin(), chosen.end());
  }
  return Graph(n, std::move(edges), g.features(), g.label(), g.soft_label());
}

}  // namespace

Dataset corrupt(const Dataset& dataset, const CorruptionSpec& spec) {
  spec.validate();
  Dataset out = dataset;

  if (spec.kind == CorruptionKind::label) {
    if (dataset.num_classes < 2) {
      throw std::invalid_argument(
          "corrupt: label corruption needs at least two classes");
    }
    const int total = static_cast<int>(dataset.graphs.size());
    const int flips = static_cast<int>(std::llround(spec.ratio * total));
    Rng selector(split_seed(spec.seed, 0));
    const std::vector<int> chosen =
        sample_without_replacement(total, flips, selector);
    for (int gi : chosen) {
      Rng rng(split_seed(spec.seed, 1 + gi));
      const int current = *dataset.graphs[gi].label();
      int flipped =
          static_cast<int>(rng.below(dataset.num_classes - 1));
      if (flipped >= current) ++flipped;
      out.graphs[gi] = dataset.graphs[gi].with_label(flipped);
    }
    return out;
  }

  for (std::size_t gi = 0; gi < dataset.graphs.size(); ++gi) {
    Rng rng(split_seed(spec.seed, gi));
    out.graphs[gi] = spec.kind == CorruptionKind::edge_remove
                         ? corrupt_edges_remove(dataset.graphs[gi],
                                                spec.ratio, rng)
                         : corrupt_edges_add(dataset.graphs[gi], spec.ratio,
                                             rng);
  }
  return out;
}

}  // namespace graphmix
