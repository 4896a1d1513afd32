#pragma once

#include <cstdint>

#include "graphmix/graph.hpp"

namespace graphmix {

enum class CorruptionKind { label, edge_remove, edge_add };

struct CorruptionSpec {
  CorruptionKind kind = CorruptionKind::label;
  double ratio = 0.0;  // in [0, 1]
  std::uint64_t seed = 0;

  void validate() const;
};

// Removes each edge independently with probability p.
Graph drop_edge(const Graph& g, double p, std::uint64_t seed);

// Removes ceil(p*n) uniformly chosen nodes with their incident edges;
// survivors are renumbered densely preserving relative order, feature rows
// dropped accordingly. Requires p in [0, 1) and at least one surviving node.
Graph drop_node(const Graph& g, double p, std::uint64_t seed);

// Induced subgraph over the nodes visited by a random walk from a uniform
// start (restart probability 0.15), until ceil(keep_ratio*n) distinct nodes
// are seen or a stall cap of 100*n steps is hit. On disconnected graphs the
// walk cannot leave the start's component, so the result may be smaller
// than requested; reached_target reports it.
struct RandomWalkSubgraph {
  Graph graph;
  bool reached_target = false;
};

RandomWalkSubgraph subgraph_rw(const Graph& g, double keep_ratio,
                               std::uint64_t seed);

// Dataset-level corruption protocols.
//   label:       exactly round(ratio*|D|) graphs get a uniformly random
//                *different* label.
//   edge_remove: per graph, round(ratio*|E|) uniformly chosen edges deleted.
//   edge_add:    per graph, round(ratio*|E|) new uniformly random non-edges
//                added; errors out if a graph lacks enough non-edges.
Dataset corrupt(const Dataset& dataset, const CorruptionSpec& spec);

}  // namespace graphmix
