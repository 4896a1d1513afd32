#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace graphmix {

// Unordered node pair, stored as (min, max).
using Edge = std::pair<int, int>;

// Undirected simple graph with an optional node-feature matrix, an optional
// class label, and an optional soft (probabilistic) label. Immutable after
// construction; all operations on it are pure, so instances can be shared
// freely across threads.
class Graph {
 public:
  Graph() = default;

  // Edges are normalized to (min, max), sorted and de-duplicated. Throws
  // std::invalid_argument on self-loops, endpoints outside [0, num_nodes),
  // a feature matrix whose row count differs from num_nodes, or a malformed
  // soft label (negative entry or sum off 1 by more than 1e-9).
  Graph(int num_nodes, std::vector<Edge> edges,
        std::optional<Eigen::MatrixXd> features = {},
        std::optional<int> label = {},
        std::optional<Eigen::VectorXd> soft_label = {});

  int num_nodes() const { return num_nodes_; }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(int u, int v) const;

  const std::optional<Eigen::MatrixXd>& features() const { return features_; }
  const std::optional<int>& label() const { return label_; }
  const std::optional<Eigen::VectorXd>& soft_label() const {
    return soft_label_;
  }

  Eigen::MatrixXd adjacency_matrix() const;
  std::vector<std::vector<int>> adjacency_lists() const;

  Graph with_label(int label) const;
  Graph with_soft_label(Eigen::VectorXd soft_label) const;

  bool operator==(const Graph& other) const;

 private:
  int num_nodes_ = 0;
  std::vector<Edge> edges_;
  std::optional<Eigen::MatrixXd> features_;
  std::optional<int> label_;
  std::optional<Eigen::VectorXd> soft_label_;
};

// degree_sequence(g)[i] = number of edges incident to node i.
std::vector<int> degree_sequence(const Graph& g);

// Result of ordering a graph's nodes by descending degree, ties broken by
// ascending original node id. sorted_adjacency equals P·A·Pᵀ for the stored
// permutation, so its row sums are non-increasing.
struct AlignedGraph {
  std::vector<int> permutation;  // permutation[rank] = original node id
  Eigen::MatrixXd sorted_adjacency;
  std::optional<Eigen::MatrixXd> sorted_features;
};

AlignedGraph align_by_degree(const Graph& g);

// Ordered graph collection with a dense class inventory.
struct Dataset {
  std::vector<Graph> graphs;
  int num_classes = 0;
  std::string name;
  // Original label value behind each dense class index; empty means the
  // dense indices are the original labels.
  std::vector<long long> class_labels;
  // True when node features were synthesized at load time because the
  // source had no node-attribute file.
  bool features_synthesized = false;

  // Throws std::invalid_argument on the first violation: empty graph, label
  // missing or out of [0, num_classes), a class with no graphs, or an
  // inconsistent feature dimension.
  void validate() const;
};

}  // namespace graphmix
