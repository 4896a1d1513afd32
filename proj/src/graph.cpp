#include "graphmix/graph.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace graphmix {

Graph::Graph(int num_nodes, std::vector<Edge> edges,
             std::optional<Eigen::MatrixXd> features, std::optional<int> label,
             std::optional<Eigen::VectorXd> soft_label)
    : num_nodes_(num_nodes),
      edges_(std::move(edges)),
      features_(std::move(features)),
      label_(label),
      soft_label_(std::move(soft_label)) {
  if (num_nodes_ < 0) {
    throw std::invalid_argument("Graph: negative node count");
  }
  for (auto& [u, v] : edges_) {
    if (u == v) {
      throw std::invalid_argument("Graph: self-loop at node " +
                                  std::to_string(u));
    }
    if (u < 0 || v < 0 || u >= num_nodes_ || v >= num_nodes_) {
      throw std::invalid_argument("Graph: edge (" + std::to_string(u) + ", " +
                                  std::to_string(v) + ") out of range for " +
                                  std::to_string(num_nodes_) + " nodes");
    }
    if (u > v) std::swap(u, v);
  }
  std::sort(edges_.begin(), edges_.end());
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());

  if (features_ && features_->rows() != num_nodes_) {
    throw std::invalid_argument(
        "Graph: feature matrix has " + std::to_string(features_->rows()) +
        " rows, expected " + std::to_string(num_nodes_));
  }
  if (label_ && *label_ < 0) {
    throw std::invalid_argument("Graph: negative class label");
  }
  if (soft_label_) {
    if ((soft_label_->array() < 0.0).any() ||
        std::abs(soft_label_->sum() - 1.0) > 1e-9) {
      throw std::invalid_argument(
          "Graph: soft label must be nonnegative and sum to 1");
    }
  }
}

bool Graph::has_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  return std::binary_search(edges_.begin(), edges_.end(), Edge{u, v});
}

Eigen::MatrixXd Graph::adjacency_matrix() const {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(num_nodes_, num_nodes_);
  for (const auto& [u, v] : edges_) {
    a(u, v) = 1.0;
    a(v, u) = 1.0;
  }
  return a;
}

std::vector<std::vector<int>> Graph::adjacency_lists() const {
  std::vector<std::vector<int>> adj(num_nodes_);
  for (const auto& [u, v] : edges_) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

Graph Graph::with_label(int label) const {
  return Graph(num_nodes_, edges_, features_, label, soft_label_);
}

Graph Graph::with_soft_label(Eigen::VectorXd soft_label) const {
  return Graph(num_nodes_, edges_, features_, label_, std::move(soft_label));
}

bool Graph::operator==(const Graph& other) const {
  if (num_nodes_ != other.num_nodes_ || edges_ != other.edges_ ||
      label_ != other.label_) {
    return false;
  }
  if (features_.has_value() != other.features_.has_value()) return false;
  if (features_ && (features_->rows() != other.features_->rows() ||
                    features_->cols() != other.features_->cols() ||
                    !(features_->array() == other.features_->array()).all())) {
    return false;
  }
  if (soft_label_.has_value() != other.soft_label_.has_value()) return false;
  if (soft_label_ &&
      (soft_label_->size() != other.soft_label_->size() ||
       !(soft_label_->array() == other.soft_label_->array()).all())) {
    return false;
  }
  return true;
}

std::vector<int> degree_sequence(const Graph& g) {
  std::vector<int> deg(g.num_nodes(), 0);
  for (const auto& [u, v] : g.edges()) {
    ++deg[u];
    ++deg[v];
  }
  return deg;
}

AlignedGraph align_by_degree(const Graph& g) {
  const int n = g.num_nodes();
  const std::vector<int> deg = degree_sequence(g);

  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(), [&deg](int a, int b) {
    return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
  });

  std::vector<int> rank(n);
  for (int r = 0; r < n; ++r) rank[perm[r]] = r;

  AlignedGraph out;
  out.permutation = perm;
  out.sorted_adjacency = Eigen::MatrixXd::Zero(n, n);
  for (const auto& [u, v] : g.edges()) {
    out.sorted_adjacency(rank[u], rank[v]) = 1.0;
    out.sorted_adjacency(rank[v], rank[u]) = 1.0;
  }
  if (g.features()) {
    Eigen::MatrixXd sorted(n, g.features()->cols());
    for (int r = 0; r < n; ++r) sorted.row(r) = g.features()->row(perm[r]);
    out.sorted_features = std::move(sorted);
  }
  return out;
}

void Dataset::validate() const {
  if (num_classes < 1) {
    throw std::invalid_argument("Dataset: num_classes must be >= 1");
  }
  if (!class_labels.empty() &&
      static_cast<int>(class_labels.size()) != num_classes) {
    throw std::invalid_argument("Dataset: class_labels size mismatch");
  }
  std::vector<int> per_class(num_classes, 0);
  const bool any_features =
      std::any_of(graphs.begin(), graphs.end(),
                  [](const Graph& g) { return g.features().has_value(); });
  Eigen::Index feature_dim = -1;
  for (std::size_t i = 0; i < graphs.size(); ++i) {
    const Graph& g = graphs[i];
    const std::string at = "Dataset: graph " + std::to_string(i);
    if (g.num_nodes() < 1) {
      throw std::invalid_argument(at + " has no nodes");
    }
    if (!g.label()) {
      throw std::invalid_argument(at + " has no class label");
    }
    if (*g.label() >= num_classes) {
      throw std::invalid_argument(at + " label out of range");
    }
    ++per_class[*g.label()];
    if (any_features) {
      if (!g.features()) {
        throw std::invalid_argument(at + " is missing features");
      }
      if (feature_dim >= 0 && g.features()->cols() != feature_dim) {
        throw std::invalid_argument(at + " feature dimension mismatch");
      }
      feature_dim = g.features()->cols();
    }
  }
  for (int c = 0; c < num_classes; ++c) {
    if (!graphs.empty() && per_class[c] == 0) {
      throw std::invalid_argument("Dataset: class " + std::to_string(c) +
                                  " has no graphs");
    }
  }
}

}  // namespace graphmix
