#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>

#include "graphmix/mixup.hpp"

namespace graphmix {

// Provenance carried alongside a serialized graphon.
struct GraphonMeta {
  std::string estimator;
  int source_class = -1;
  std::uint64_t seed = 0;
};

// Textual graphon format: a JSON object
//   {"k": int, "d": int, "w": [K*K floats], "x": [K*d floats],
//    "label": [C floats], "meta": {"estimator", "source_class", "seed"}}
// with w and x row-major and floats printed as shortest round-trip
// decimals.
void save_graphon_json(const LabeledGraphon& graphon, const GraphonMeta& meta,
                       const std::filesystem::path& path);

std::pair<LabeledGraphon, GraphonMeta> load_graphon_json(
    const std::filesystem::path& path);

}  // namespace graphmix
