#pragma once

#include <filesystem>
#include <string>

#include "graphmix/graph.hpp"

namespace graphmix {

// Reads the TUDataset text layout: NAME_A.txt (comma-separated 1-based
// "i, j" pairs, both directions listed), NAME_graph_indicator.txt (1-based
// graph id per node), NAME_graph_labels.txt (one integer per graph), and
// optionally NAME_node_attributes.txt (comma-separated floats per node) and
// NAME_soft_labels.txt (one row of C floats per graph).
//
// Files are looked up in root/name if that directory exists, otherwise in
// root itself. Node ids are remapped to 0-based per-graph ids, duplicate
// directed edge lines collapse to one undirected edge, and labels are
// remapped to a dense [0, C) range with the mapping kept in class_labels.
// Datasets without a node-attribute file get a constant 1-dimensional
// feature of value 1.0 so the feature pipeline always has input.
//
// Inputs that violate the simple-graph invariants are rejected, not
// repaired: self-loops and edges referencing nodes absent from the
// indicator throw std::invalid_argument with the offending line number.
Dataset load_tu_dataset(const std::filesystem::path& root,
                        const std::string& name);

// Writes the same layout under root/name (created if needed). Labels are
// mapped back through class_labels; synthesized features are not written.
// If any graph carries a soft label the sidecar NAME_soft_labels.txt is
// emitted, with one-hot rows for the hard-labeled graphs. Floats are
// written as shortest round-trip decimals, so a reload reproduces them
// bit-exactly. Throws std::invalid_argument on an empty dataset.
void save_tu_dataset(const Dataset& dataset, const std::filesystem::path& root,
                     const std::string& name);

}  // namespace graphmix
