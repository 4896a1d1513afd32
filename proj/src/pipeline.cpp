#include "graphmix/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <span>
#include <stdexcept>
#include <vector>

#include "graphmix/mixup.hpp"
#include "graphmix/rng.hpp"

namespace graphmix {

void PipelineConfig::validate() const {
  estimator.validate();
  if (lambda_low < 0.0 || lambda_high > 1.0 || lambda_low > lambda_high) {
    throw std::invalid_argument(
        "PipelineConfig: need 0 <= lambda_low <= lambda_high <= 1");
  }
  if (aug_ratio < 0.0) {
    throw std::invalid_argument("PipelineConfig: aug_ratio must be >= 0");
  }
  if (batch_size < 1) {
    throw std::invalid_argument("PipelineConfig: batch_size must be >= 1");
  }
  if (k && *k < 1) {
    throw std::invalid_argument("PipelineConfig: k must be >= 1");
  }
  if (sample_k && *sample_k < 1) {
    throw std::invalid_argument("PipelineConfig: sample_k must be >= 1");
  }
}

namespace {

// One estimate-mix-generate round over a slice of the dataset. The event
// seed drives, in order: the class-pair draw (only when more than two
// classes are present), the lambda draw, and the generation stream.
std::vector<Graph> mixup_event(const Dataset& dataset,
                               std::span<const std::size_t> indices,
                               int resolution, const PipelineConfig& config,
                               std::uint64_t event_seed, long long quota) {
  Rng rng(event_seed);

  std::vector<int> classes_present;
  {
    std::vector<char> seen(dataset.num_classes, 0);
    for (std::size_t i : indices) {
      const int label = *dataset.graphs[i].label();
      if (!seen[label]) {
        seen[label] = 1;
        classes_present.push_back(label);
      }
    }
    std::sort(classes_present.begin(), classes_present.end());
  }
  if (classes_present.size() < 2) {
    throw std::invalid_argument("run_mixup: need at least two classes");
  }

  int class_a = classes_present[0];
  int class_b = classes_present[1];
  if (classes_present.size() > 2) {
    const int ia = static_cast<int>(rng.below(classes_present.size()));
    int ib = static_cast<int>(rng.below(classes_present.size() - 1));
    if (ib >= ia) ++ib;
    class_a = classes_present[ia];
    class_b = classes_present[ib];
  }

  const double lambda = rng.uniform(config.lambda_low, config.lambda_high);
  const std::uint64_t generation_seed = rng.next_u64();

  const auto class_graphs = [&](int label) {
    std::vector<Graph> graphs;
    for (std::size_t i : indices) {
      if (*dataset.graphs[i].label() == label) {
        graphs.push_back(dataset.graphs[i]);
      }
    }
    return graphs;
  };

  EstimatorConfig estimator = config.estimator;
  estimator.k = resolution;

  const auto estimate = [&](int label) {
    const std::vector<Graph> graphs = class_graphs(label);
    if (graphs.empty()) {
      throw std::invalid_argument("run_mixup: class " + std::to_string(label) +
                                  " has no graphs");
    }
    Eigen::VectorXd one_hot = Eigen::VectorXd::Zero(dataset.num_classes);
    one_hot(label) = 1.0;
    return LabeledGraphon{estimate_graphon(graphs, estimator), one_hot};
  };

  const LabeledGraphon mixed =
      mix_graphons(estimate(class_a), estimate(class_b), lambda);

  MixupConfig generation;
  generation.lambda = lambda;
  generation.k = config.sample_k ? *config.sample_k : mixed.graphon.k();
  generation.count = static_cast<int>(quota);
  generation.seed = generation_seed;

  // Hard label for dataset bookkeeping: argmax of the soft label, ties to
  // the lower class index.
  int hard = 0;
  for (int c = 1; c < dataset.num_classes; ++c) {
    if (mixed.label(c) > mixed.label(hard)) hard = c;
  }

  std::vector<Graph> out;
  out.reserve(quota);
  for (auto& [graph, soft] : generate_set(mixed, generation)) {
    out.push_back(Graph(graph.num_nodes(), graph.edges(), graph.features(),
                        hard, soft));
  }
  return out;
}

Dataset run_batched(const Dataset& dataset, const PipelineConfig& config,
                    std::size_t batch_size) {
  config.validate();
  dataset.validate();
  if (dataset.num_classes < 2) {
    throw std::invalid_argument("run_mixup: need at least two classes");
  }

  const std::size_t total_graphs = dataset.graphs.size();
  const long long total_synthetic =
      std::llround(config.aug_ratio * static_cast<double>(total_graphs));
  Dataset out = dataset;
  if (total_synthetic == 0) return out;

  const int resolution =
      config.k ? *config.k : auto_k(std::span<const Graph>(dataset.graphs));

  const int batches =
      static_cast<int>((total_graphs + batch_size - 1) / batch_size);
  const std::vector<long long> quotas = batch_quotas(total_synthetic, batches);

  // Work out which batches can mix (two classes present) before generating,
  // rolling the quota of skipped batches forward.
  std::vector<std::vector<std::size_t>> batch_indices(batches);
  for (int b = 0; b < batches; ++b) {
    const std::size_t lo = static_cast<std::size_t>(b) * batch_size;
    const std::size_t hi = std::min(total_graphs, lo + batch_size);
    for (std::size_t i = lo; i < hi; ++i) batch_indices[b].push_back(i);
  }
  std::vector<char> eligible(batches, 0);
  int last_eligible = -1;
  for (int b = 0; b < batches; ++b) {
    int first_label = -1;
    for (std::size_t i : batch_indices[b]) {
      const int label = *dataset.graphs[i].label();
      if (first_label < 0) first_label = label;
      if (label != first_label) {
        eligible[b] = 1;
        last_eligible = b;
        break;
      }
    }
    if (!eligible[b]) {
      std::cerr << "warning: batch " << b
                << " has a single class; its quota is redistributed\n";
    }
  }
  if (last_eligible < 0) {
    throw std::invalid_argument(
        "run_mixup: every batch has a single class; nothing to mix");
  }

  std::vector<long long> final_quota(batches, 0);
  long long carry = 0;
  for (int b = 0; b < batches; ++b) {
    carry += quotas[b];
    if (eligible[b]) {
      final_quota[b] = carry;
      carry = 0;
    }
  }
  final_quota[last_eligible] += carry;

  for (int b = 0; b < batches; ++b) {
    if (!eligible[b] || final_quota[b] == 0) continue;
    const std::vector<Graph> synthetic = mixup_event(
        dataset, batch_indices[b], resolution, config,
        split_seed(config.seed, static_cast<std::uint64_t>(b)),
        final_quota[b]);
    out.graphs.insert(out.graphs.end(), synthetic.begin(), synthetic.end());
  }
  out.validate();
  return out;
}

}  // namespace

std::vector<long long> batch_quotas(long long total, int batches) {
  if (batches < 1) {
    throw std::invalid_argument("batch_quotas: batches must be >= 1");
  }
  std::vector<long long> quotas(batches, total / batches);
  quotas.back() = total - (total / batches) * (batches - 1);
  return quotas;
}

Dataset run_mixup(const Dataset& dataset, const PipelineConfig& config) {
  // Whole-set run: a single batch spanning the dataset, so it is exactly
  // the batch variant with batch_size >= |S|.
  return run_batched(dataset, config,
                     std::max<std::size_t>(1, dataset.graphs.size()));
}

Dataset run_mixup_batch(const Dataset& dataset, const PipelineConfig& config) {
  return run_batched(dataset, config,
                     static_cast<std::size_t>(config.batch_size));
}

}  // namespace graphmix
