#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <utility>
#include <vector>

#include "graphmix/graph.hpp"
#include "graphmix/graphon.hpp"

namespace graphmix {

// Step graphon plus a soft class label (nonnegative, sums to 1).
struct LabeledGraphon {
  StepGraphon graphon;
  Eigen::VectorXd label;

  void validate() const;
};

struct MixupConfig {
  double lambda = 0.5;     // weight of the first graphon
  int k = 1;               // node count of generated graphs
  int count = 0;           // number of graphs to generate
  std::uint64_t seed = 0;

  void validate() const;
};

// Convex interpolation of two labeled graphons: lambda*a + (1-lambda)*b on
// the matrices, the features and the labels. lambda=1 returns a bit-exactly
// and lambda=0 returns b bit-exactly. If the partition counts differ, both
// sides are first rescaled to round((a.k + b.k)/2). Throws on a feature
// dimension mismatch.
LabeledGraphon mix_graphons(const LabeledGraphon& a, const LabeledGraphon& b,
                            double lambda);

// Draws a k-node random graph from the graphon: node positions u_i are
// iid Uniform[0,1), node i lands in block min(floor(u_i*K), K-1), and each
// unordered pair i<j gets an edge with an independent Bernoulli draw of
// probability w[block_i][block_j]. Self-loops are never produced. Node i's
// feature row is copied from its block's graphon feature row.
Graph sample_graph(const StepGraphon& graphon, int k, std::uint64_t seed);

// config.count independent sample_graph draws, each from child stream i of
// config.seed, each paired with the graphon's soft label.
std::vector<std::pair<Graph, Eigen::VectorXd>> generate_set(
    const LabeledGraphon& graphon, const MixupConfig& config);

// Edge perturbation driven by a graphon: every existing edge (i, j) of g is
// kept independently with probability w at the degree-sorted blocks of i
// and j. No edges are added and the node set is unchanged.
Graph dropedge_degenerate(const Graph& g, const StepGraphon& w,
                          std::uint64_t seed);

}  // namespace graphmix
