#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <string>

#include "graphmix/graph.hpp"
#include "graphmix/graphon.hpp"

namespace graphmix {

// Small pattern graph used for homomorphism counting. At most 8 nodes;
// connectivity is not required.
class Motif {
 public:
  explicit Motif(Graph pattern);

  // Tiny edge-list format: "v=3; 0-1 1-2 2-0".
  static Motif parse(const std::string& text);
  // Builtins: "node", "edge", "path<N>" (N nodes), "triangle", "cycle<N>".
  static Motif named(const std::string& name);

  const Graph& pattern() const { return pattern_; }
  int num_nodes() const { return pattern_.num_nodes(); }
  int num_edges() const { return pattern_.num_edges(); }

 private:
  Graph pattern_;
};

// Outcome of an inequality check: satisfied <=> lhs <= rhs + 1e-12.
// vacuous marks probability bounds that exceed 1.
struct BoundReport {
  double lhs = 0.0;
  double rhs = 0.0;
  bool satisfied = false;
  bool vacuous = false;
  std::string inputs_digest;
};

inline constexpr double kBoundTolerance = 1e-12;

BoundReport make_bound_report(double lhs, double rhs, std::string digest,
                              bool vacuous = false);

// Exact number of adjacency-preserving maps from the motif into g,
// counted by backtracking over partial maps. Intended for small graphs;
// counts are exact in 64 bits.
std::int64_t hom_count(const Motif& f, const Graph& g);

// hom(F, G) / v(G)^v(F). Densities of tree components and triangles are
// computed by dynamic programming / common-neighbor counting so large
// sampled graphs stay tractable; other motifs fall back to hom_count with
// a work guard.
double hom_density_graph(const Motif& f, const Graph& g);

// Exact homomorphism density of the motif in a step graphon:
// (1/K)^v(F) * sum over block assignments of the edge-probability product.
// Guarded at 1e8 enumeration terms.
double hom_density_graphon(const Motif& f, const StepGraphon& w);

// Row means of w: the degree marginal of the step function.
Eigen::VectorXd degree_function(const StepGraphon& w);

// Exact cut norm of a K×K block matrix, max over s,t in {0,1}^K of
// |sᵀ·d·t| / K². The bilinear objective over box-constrained block
// fractions attains its maximum at vertices, so the vertex search is exact
// for step functions. Requires K <= 20.
double cut_norm_exact(const Eigen::MatrixXd& d);

// Alternating-maximization lower bound on the cut norm from seeded random
// vertex starts; scales past the exact search. Always <= cut_norm_exact.
double cut_norm_lower_bound(const Eigen::MatrixXd& d, int restarts,
                            std::uint64_t seed);

// Checks the mixup density bound on both sides:
//   |t(f, mix) - t(f, wg)| <= (1-lambda)*e(f)*cutnorm(wh - wg)
//   |t(f, mix) - t(f, wh)| <=    lambda *e(f)*cutnorm(wh - wg)
// where mix = lambda*wg + (1-lambda)*wh. The report carries the side with
// the smaller margin; satisfied requires both.
BoundReport check_theorem1(const StepGraphon& wg, const StepGraphon& wh,
                           const Motif& f, double lambda);

// Samples `trials` n-node graphs from w and compares the empirical
// frequency of |t(f,G) - t(f,W)| > epsilon against the sampling
// concentration bound 2*exp(-eps^2*n / (8*v(f)^2)), with one binomial
// standard error of slack on the threshold.
BoundReport check_theorem2(const StepGraphon& w, const Motif& f, int n,
                           double epsilon, int trials, std::uint64_t seed);

// Probability that two independent draws of the full K×K Bernoulli
// adjacency matrix of the graphon coincide: the product over all K² cells
// of w² + (1-w)², evaluated in log space.
struct CollisionProbability {
  double probability = 0.0;
  double log_probability = 0.0;
};

CollisionProbability collision_probability(const StepGraphon& w);

// Cut-norm distance between a step graphon and its block average on a
// uniform coarser partition, as an illustration of step-function
// approximation. Uniform-partition averaging need not achieve the optimal
// partition, so this is not a certificate of the weak-regularity bound.
double step_approx_error(const StepGraphon& fine, int k_coarse);

}  // namespace graphmix
