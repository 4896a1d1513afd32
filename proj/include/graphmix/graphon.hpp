#pragma once

#include <Eigen/Dense>

#include <optional>
#include <span>
#include <string>
#include <utility>

#include "graphmix/graph.hpp"

namespace graphmix {

// Step-function graphon on a uniform K-partition of [0,1]: a K×K symmetric
// matrix of edge probabilities plus a K×d matrix of graphon node features.
struct StepGraphon {
  Eigen::MatrixXd w;  // K×K, symmetric, entries in [0, 1]
  Eigen::MatrixXd x;  // K×d

  int k() const { return static_cast<int>(w.rows()); }
  int feature_dim() const { return static_cast<int>(x.cols()); }

  // Throws std::invalid_argument unless w is square, exactly symmetric,
  // within [0, 1], K >= 1, and x has exactly K rows.
  void validate() const;
};

enum class EstimatorMethod { mean, lg, usvt, sas };

EstimatorMethod estimator_method_from_string(const std::string& name);
std::string to_string(EstimatorMethod method);

struct EstimatorConfig {
  EstimatorMethod method = EstimatorMethod::lg;
  std::optional<int> k;          // empty = average node count of the class
  double usvt_eta = 2.02;        // singular values below eta*sqrt(k) are cut
  int sas_window = 5;            // odd box-filter width
  std::optional<int> lg_blocks;  // empty = ceil(sqrt(k))

  void validate() const;
};

// Rounded mean node count over the graphs, at least 1.
int auto_k(std::span<const Graph> graphs);

// Rescales an n×n matrix (and row-aligned n×d features) onto a k-grid.
// Downscaling (k <= n) maps node i to block floor(i*k/n) and averages every
// cell over its preimage; upscaling replicates, cell (a,b) reading from
// (floor(a*n/k), floor(b*n/k)). k == n returns the input unchanged. The
// global mean is preserved exactly whenever one grid divides the other.
std::pair<Eigen::MatrixXd, Eigen::MatrixXd> resize_to_grid(
    const Eigen::MatrixXd& adjacency, const Eigen::MatrixXd& features, int k);

// Aligns every graph by degree, rescales to the k-grid, and averages the
// matrices and pooled node features elementwise.
StepGraphon empirical_mean_graphon(std::span<const Graph> graphs, int k);

// "Largest gap" block estimator: boundaries go at the (B-1) largest
// consecutive gaps of the mean sorted-degree profile, each block pair takes
// the mean of the empirical-mean matrix over it, and the block values are
// re-expanded onto the k-grid.
StepGraphon estimate_lg(std::span<const Graph> graphs,
                        const EstimatorConfig& config);

// Singular value thresholding of the empirical-mean matrix: components with
// singular value below usvt_eta*sqrt(k) are dropped, the reconstruction is
// symmetrized and clipped to [0, 1]. If the SVD fails to converge the
// empirical mean is returned and *svd_fallback is set.
StepGraphon estimate_usvt(std::span<const Graph> graphs,
                          const EstimatorConfig& config,
                          bool* svd_fallback = nullptr);

// Sort-and-smooth estimator: the empirical-mean matrix passed through a
// sas_window×sas_window box filter (truncated at the borders), clipped and
// symmetrized. The box filter stands in for the total-variation smoothing
// of the original method.
StepGraphon estimate_sas(std::span<const Graph> graphs,
                         const EstimatorConfig& config);

// Dispatch on config.method.
StepGraphon estimate_graphon(std::span<const Graph> graphs,
                             const EstimatorConfig& config,
                             bool* svd_fallback = nullptr);

// Building blocks exposed for direct testing.
Eigen::MatrixXd usvt_threshold(const Eigen::MatrixXd& m, double eta,
                               bool* svd_failed = nullptr);
Eigen::MatrixXd box_filter(const Eigen::MatrixXd& m, int window);

}  // namespace graphmix
