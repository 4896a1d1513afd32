#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "graphmix/graph.hpp"
#include "graphmix/graphon.hpp"

namespace graphmix {

struct PipelineConfig {
  EstimatorConfig estimator;
  double lambda_low = 0.1;
  double lambda_high = 0.2;
  double aug_ratio = 0.2;
  std::optional<int> k;         // graphon resolution; empty = average nodes
  std::optional<int> sample_k;  // generated node count; empty = graphon k
  int batch_size = 128;
  std::uint64_t seed = 0;

  void validate() const;
};

// Class-level mixup augmentation over the whole training set: estimate a
// graphon per class of a chosen pair, interpolate graphon, features and
// labels with lambda ~ Uniform[lambda_low, lambda_high], sample
// round(aug_ratio * |S|) synthetic graphs from the mixture and append them
// (soft-labeled) to the originals, which pass through untouched.
Dataset run_mixup(const Dataset& dataset, const PipelineConfig& config);

// Batch variant: the set is split into consecutive batches of batch_size,
// each batch runs its own estimate-mix-generate round with its own lambda
// and class pair, and quotas sum to round(aug_ratio * |S|) with the
// remainder on the last batch. Batches with a single class are skipped with
// a warning on stderr and their quota moves to the next eligible batch.
// With batch_size >= |S| the output matches run_mixup exactly.
Dataset run_mixup_batch(const Dataset& dataset, const PipelineConfig& config);

// Per-batch synthetic quotas: floor(total/batches) everywhere, remainder on
// the last batch.
std::vector<long long> batch_quotas(long long total, int batches);

}  // namespace graphmix
