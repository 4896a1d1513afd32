#include "graphmix/graphon.hpp"

#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace graphmix {

namespace {

// Replaces w with (w + wᵀ)/2. Addition commutes in floating point, so the
// result is exactly symmetric even when w carries rounding asymmetry.
Eigen::MatrixXd symmetrize(const Eigen::MatrixXd& w) {
  return (w + w.transpose()) / 2.0;
}

Eigen::MatrixXd clip01(Eigen::MatrixXd m) {
  return m.cwiseMax(0.0).cwiseMin(1.0);
}

}  // namespace

void StepGraphon::validate() const {
  if (w.rows() < 1 || w.rows() != w.cols()) {
    throw std::invalid_argument("StepGraphon: w must be square, k >= 1");
  }
  if (x.rows() != w.rows()) {
    throw std::invalid_argument("StepGraphon: x must have k rows");
  }
  if (!(w.array() == w.transpose().array()).all()) {
    throw std::invalid_argument("StepGraphon: w must be symmetric");
  }
  if ((w.array() < 0.0).any() || (w.array() > 1.0).any()) {
    throw std::invalid_argument("StepGraphon: w entries must be in [0, 1]");
  }
}

EstimatorMethod estimator_method_from_string(const std::string& name) {
  if (name == "mean") return EstimatorMethod::mean;
  if (name == "lg") return EstimatorMethod::lg;
  if (name == "usvt") return EstimatorMethod::usvt;
  if (name == "sas") return EstimatorMethod::sas;
  throw std::invalid_argument("unknown estimator method: " + name);
}

std::string to_string(EstimatorMethod method) {
  switch (method) {
    case EstimatorMethod::mean:
      return "mean";
    case EstimatorMethod::lg:
      return "lg";
    case EstimatorMethod::usvt:
      return "usvt";
    case EstimatorMethod::sas:
      return "sas";
  }
  throw std::logic_error("unreachable");
}

void EstimatorConfig::validate() const {
  if (k && *k < 1) {
    throw std::invalid_argument("EstimatorConfig: k must be >= 1");
  }
  if (sas_window < 1 || sas_window % 2 == 0) {
    throw std::invalid_argument("EstimatorConfig: sas_window must be odd");
  }
  if (lg_blocks && *lg_blocks < 1) {
    throw std::invalid_argument("EstimatorConfig: lg_blocks must be >= 1");
  }
  if (usvt_eta < 0.0) {
    throw std::invalid_argument("EstimatorConfig: usvt_eta must be >= 0");
  }
}

int auto_k(std::span<const Graph> graphs) {
  if (graphs.empty()) {
    throw std::invalid_argument("auto_k: empty graph set");
  }
  double sum = 0.0;
  for (const Graph& g : graphs) sum += g.num_nodes();
  const long long k = std::llround(sum / static_cast<double>(graphs.size()));
  return static_cast<int>(std::max(1LL, k));
}

std::pair<Eigen::MatrixXd, Eigen::MatrixXd> resize_to_grid(
    const Eigen::MatrixXd& adjacency, const Eigen::MatrixXd& features,
    int k) {
  const int n = static_cast<int>(adjacency.rows());
  if (n < 1 || adjacency.cols() != n) {
    throw std::invalid_argument("resize_to_grid: adjacency must be square");
  }
  if (features.rows() != n) {
    throw std::invalid_argument("resize_to_grid: features must have n rows");
  }
  if (k < 1) {
    throw std::invalid_argument("resize_to_grid: k must be >= 1");
  }
  if (k == n) return {adjacency, features};

  const int d = static_cast<int>(features.cols());
  Eigen::MatrixXd w(k, k);
  Eigen::MatrixXd x(k, d);

  if (k < n) {
    std::vector<int> block(n);
    for (int i = 0; i < n; ++i) {
      block[i] = static_cast<int>(static_cast<long long>(i) * k / n);
    }
    Eigen::MatrixXd sums = Eigen::MatrixXd::Zero(k, k);
    Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(k, k);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        sums(block[i], block[j]) += adjacency(i, j);
        counts(block[i], block[j]) += 1.0;
      }
    }
    w = sums.cwiseQuotient(counts);

    Eigen::MatrixXd fsums = Eigen::MatrixXd::Zero(k, d);
    Eigen::VectorXd fcounts = Eigen::VectorXd::Zero(k);
    for (int i = 0; i < n; ++i) {
      fsums.row(block[i]) += features.row(i);
      fcounts(block[i]) += 1.0;
    }
    x = fsums.array().colwise() / fcounts.array();
  } else {
    for (int a = 0; a < k; ++a) {
      const int ia = static_cast<int>(static_cast<long long>(a) * n / k);
      for (int b = 0; b < k; ++b) {
        const int jb = static_cast<int>(static_cast<long long>(b) * n / k);
        w(a, b) = adjacency(ia, jb);
      }
      x.row(a) = features.row(ia);
    }
  }
  return {std::move(w), std::move(x)};
}

StepGraphon empirical_mean_graphon(std::span<const Graph> graphs, int k) {
  if (graphs.empty()) {
    throw std::invalid_argument("empirical_mean_graphon: empty class");
  }
  if (k < 1) {
    throw std::invalid_argument("empirical_mean_graphon: k must be >= 1");
  }

  Eigen::MatrixXd w_sum;
  Eigen::MatrixXd x_sum;
  for (const Graph& g : graphs) {
    const AlignedGraph aligned = align_by_degree(g);
    const Eigen::MatrixXd feat =
        aligned.sorted_features
            ? *aligned.sorted_features
            : Eigen::MatrixXd::Ones(g.num_nodes(), 1);
    auto [w, x] = resize_to_grid(aligned.sorted_adjacency, feat, k);
    if (w_sum.size() == 0) {
      w_sum = std::move(w);
      x_sum = std::move(x);
    } else {
      if (x.cols() != x_sum.cols()) {
        throw std::invalid_argument(
            "empirical_mean_graphon: feature dimension mismatch");
      }
      w_sum += w;
      x_sum += x;
    }
  }
  const double m = static_cast<double>(graphs.size());
  StepGraphon out{clip01(symmetrize(w_sum / m)), x_sum / m};
  out.validate();
  return out;
}

StepGraphon estimate_lg(std::span<const Graph> graphs,
                        const EstimatorConfig& config) {
  config.validate();
  const int k = config.k ? *config.k : auto_k(graphs);
  const StepGraphon mean = empirical_mean_graphon(graphs, k);

  const int blocks = config.lg_blocks
                         ? *config.lg_blocks
                         : static_cast<int>(std::ceil(std::sqrt(k)));
  if (blocks > k) {
    throw std::invalid_argument("estimate_lg: block count exceeds k");
  }

  // Mean sorted-degree profile of the averaged matrix; alignment makes it
  // (close to) non-increasing, so block boundaries go at the largest drops.
  const Eigen::VectorXd profile = mean.w.rowwise().mean();
  std::vector<int> gap_order(std::max(0, k - 1));
  std::iota(gap_order.begin(), gap_order.end(), 0);
  std::sort(gap_order.begin(), gap_order.end(), [&profile](int a, int b) {
    const double ga = profile(a) - profile(a + 1);
    const double gb = profile(b) - profile(b + 1);
    return ga != gb ? ga > gb : a < b;
  });
  std::vector<int> cuts(gap_order.begin(),
                        gap_order.begin() + (blocks - 1));
  std::sort(cuts.begin(), cuts.end());

  std::vector<int> block_of(k);
  {
    int b = 0;
    for (int i = 0; i < k; ++i) {
      block_of[i] = b;
      if (b < blocks - 1 && i == cuts[b]) ++b;
    }
  }
  std::vector<std::vector<int>> members(blocks);
  for (int i = 0; i < k; ++i) members[block_of[i]].push_back(i);

  Eigen::MatrixXd block_value = Eigen::MatrixXd::Zero(blocks, blocks);
  for (int p = 0; p < blocks; ++p) {
    for (int q = p; q < blocks; ++q) {
      double sum = 0.0;
      for (int i : members[p]) {
        for (int j : members[q]) sum += mean.w(i, j);
      }
      const double value =
          sum / (static_cast<double>(members[p].size()) * members[q].size());
      block_value(p, q) = value;
      block_value(q, p) = value;
    }
  }

  Eigen::MatrixXd w(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = 0; j < k; ++j) {
      w(i, j) = block_value(block_of[i], block_of[j]);
    }
  }
  StepGraphon out{clip01(std::move(w)), mean.x};
  out.validate();
  return out;
}

Eigen::MatrixXd usvt_threshold(const Eigen::MatrixXd& m, double eta,
                               bool* svd_failed) {
  if (svd_failed) *svd_failed = false;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(
      m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (svd.info() != Eigen::Success) {
    if (svd_failed) *svd_failed = true;
    return m;
  }
  const double threshold = eta * std::sqrt(static_cast<double>(m.rows()));
  Eigen::VectorXd kept = svd.singularValues();
  for (Eigen::Index i = 0; i < kept.size(); ++i) {
    if (kept(i) < threshold) kept(i) = 0.0;
  }
  return svd.matrixU() * kept.asDiagonal() * svd.matrixV().transpose();
}

StepGraphon estimate_usvt(std::span<const Graph> graphs,
                          const EstimatorConfig& config, bool* svd_fallback) {
  config.validate();
  const int k = config.k ? *config.k : auto_k(graphs);
  const StepGraphon mean = empirical_mean_graphon(graphs, k);

  bool failed = false;
  const Eigen::MatrixXd denoised =
      usvt_threshold(mean.w, config.usvt_eta, &failed);
  if (svd_fallback) *svd_fallback = failed;
  if (failed) return mean;

  StepGraphon out{clip01(symmetrize(denoised)), mean.x};
  out.validate();
  return out;
}

Eigen::MatrixXd box_filter(const Eigen::MatrixXd& m, int window) {
  if (window < 1 || window % 2 == 0) {
    throw std::invalid_argument("box_filter: window must be odd and >= 1");
  }
  const int h = window / 2;

  // Separable truncated mean: smooth down the columns, then transpose and
  // repeat, which matches a full 2-D rectangle mean exactly.
  const auto pass = [h](const Eigen::MatrixXd& in) {
    Eigen::MatrixXd out(in.rows(), in.cols());
    const int len = static_cast<int>(in.rows());
    for (Eigen::Index j = 0; j < in.cols(); ++j) {
      for (int i = 0; i < len; ++i) {
        const int lo = std::max(0, i - h);
        const int hi = std::min(len - 1, i + h);
        double sum = 0.0;
        for (int t = lo; t <= hi; ++t) sum += in(t, j);
        out(i, j) = sum / (hi - lo + 1);
      }
    }
    return out;
  };

  const Eigen::MatrixXd rows_done = pass(m);
  return pass(rows_done.transpose()).transpose();
}

StepGraphon estimate_sas(std::span<const Graph> graphs,
                         const EstimatorConfig& config) {
  config.validate();
  const int k = config.k ? *config.k : auto_k(graphs);
  const StepGraphon mean = empirical_mean_graphon(graphs, k);
  StepGraphon out{clip01(symmetrize(box_filter(mean.w, config.sas_window))),
                  mean.x};
  out.validate();
  return out;
}

StepGraphon estimate_graphon(std::span<const Graph> graphs,
                             const EstimatorConfig& config,
                             bool* svd_fallback) {
  if (svd_fallback) *svd_fallback = false;
  switch (config.method) {
    case EstimatorMethod::mean: {
      config.validate();
      return empirical_mean_graphon(graphs,
                                    config.k ? *config.k : auto_k(graphs));
    }
    case EstimatorMethod::lg:
      return estimate_lg(graphs, config);
    case EstimatorMethod::usvt:
      return estimate_usvt(graphs, config, svd_fallback);
    case EstimatorMethod::sas:
      return estimate_sas(graphs, config);
  }
  throw std::logic_error("unreachable");
}

}  // namespace graphmix
