#include "graphmix/tu_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <system_error>
#include <vector>

namespace graphmix {

namespace {

namespace fs = std::filesystem;

fs::path dataset_dir(const fs::path& root, const std::string& name) {
  const fs::path nested = root / name;
  return fs::is_directory(nested) ? nested : root;
}

std::vector<std::string> read_lines(const fs::path& file, bool required) {
  std::ifstream in(file);
  if (!in) {
    if (required) {
      throw std::invalid_argument("missing file: " + file.string());
    }
    return {};
  }
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  // Trailing blank lines are common in these files; interior blanks are not.
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

template <typename T>
T parse_number(std::string_view field, const std::string& context) {
  field = trim(field);
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc{} || ptr != field.data() + field.size()) {
    throw std::invalid_argument(context + ": cannot parse '" +
                                std::string(field) + "'");
  }
  return value;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      return fields;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc{}) throw std::runtime_error("float formatting failed");
  return std::string(buf, ptr);
}

}  // namespace

Dataset load_tu_dataset(const fs::path& root, const std::string& name) {
  const fs::path dir = dataset_dir(root, name);
  const auto file = [&](const std::string& suffix) {
    return dir / (name + suffix);
  };

  const auto indicator_lines = read_lines(file("_graph_indicator.txt"), true);
  const auto edge_lines = read_lines(file("_A.txt"), true);
  const auto label_lines = read_lines(file("_graph_labels.txt"), true);
  const auto attr_lines = read_lines(file("_node_attributes.txt"), false);
  const auto soft_lines = read_lines(file("_soft_labels.txt"), false);

  const int total_nodes = static_cast<int>(indicator_lines.size());
  const int num_graphs = static_cast<int>(label_lines.size());
  if (num_graphs == 0) {
    throw std::invalid_argument(name + ": no graphs in label file");
  }

  // Node -> graph assignment and per-graph local ids, in file order.
  std::vector<int> node_graph(total_nodes);
  std::vector<int> node_local(total_nodes);
  std::vector<int> graph_size(num_graphs, 0);
  for (int i = 0; i < total_nodes; ++i) {
    const int gid = parse_number<int>(
        indicator_lines[i],
        name + "_graph_indicator.txt line " + std::to_string(i + 1));
    if (gid < 1 || gid > num_graphs) {
      throw std::invalid_argument(name + "_graph_indicator.txt line " +
                                  std::to_string(i + 1) +
                                  ": graph id out of range");
    }
    node_graph[i] = gid - 1;
    node_local[i] = graph_size[gid - 1]++;
  }
  for (int g = 0; g < num_graphs; ++g) {
    if (graph_size[g] == 0) {
      throw std::invalid_argument(name + ": graph " + std::to_string(g + 1) +
                                  " has no nodes in the indicator");
    }
  }

  std::vector<std::vector<Edge>> edges(num_graphs);
  for (std::size_t ln = 0; ln < edge_lines.size(); ++ln) {
    const std::string context =
        name + "_A.txt line " + std::to_string(ln + 1);
    if (trim(edge_lines[ln]).empty()) continue;
    const auto fields = split(edge_lines[ln], ',');
    if (fields.size() != 2) {
      throw std::invalid_argument(context + ": expected 'i, j'");
    }
    const int a = parse_number<int>(fields[0], context);
    const int b = parse_number<int>(fields[1], context);
    if (a < 1 || a > total_nodes || b < 1 || b > total_nodes) {
      throw std::invalid_argument(
          context + ": node referenced by an edge is absent from indicator");
    }
    if (a == b) {
      throw std::invalid_argument(context + ": self-loop (" +
                                  std::to_string(a) + ", " +
                                  std::to_string(b) + ")");
    }
    if (node_graph[a - 1] != node_graph[b - 1]) {
      throw std::invalid_argument(context + ": edge crosses graphs");
    }
    edges[node_graph[a - 1]].emplace_back(node_local[a - 1],
                                          node_local[b - 1]);
  }

  // Dense label remap, ascending by original value.
  std::vector<long long> raw_labels(num_graphs);
  std::map<long long, int> label_index;
  for (int g = 0; g < num_graphs; ++g) {
    raw_labels[g] = parse_number<long long>(
        label_lines[g],
        name + "_graph_labels.txt line " + std::to_string(g + 1));
    label_index.emplace(raw_labels[g], 0);
  }
  std::vector<long long> class_labels;
  for (auto& [value, index] : label_index) {
    index = static_cast<int>(class_labels.size());
    class_labels.push_back(value);
  }
  const int num_classes = static_cast<int>(class_labels.size());

  std::optional<Eigen::MatrixXd> all_features;
  if (!attr_lines.empty()) {
    if (static_cast<int>(attr_lines.size()) != total_nodes) {
      throw std::invalid_argument(name +
                                  "_node_attributes.txt: expected one line "
                                  "per node in the indicator");
    }
    const auto first = split(attr_lines[0], ',');
    const int dim = static_cast<int>(first.size());
    Eigen::MatrixXd feat(total_nodes, dim);
    for (int i = 0; i < total_nodes; ++i) {
      const std::string context =
          name + "_node_attributes.txt line " + std::to_string(i + 1);
      const auto fields = split(attr_lines[i], ',');
      if (static_cast<int>(fields.size()) != dim) {
        throw std::invalid_argument(context + ": inconsistent column count");
      }
      for (int j = 0; j < dim; ++j) {
        feat(i, j) = parse_number<double>(fields[j], context);
      }
    }
    all_features = std::move(feat);
  }

  std::vector<std::optional<Eigen::VectorXd>> soft_labels(num_graphs);
  if (!soft_lines.empty()) {
    if (static_cast<int>(soft_lines.size()) != num_graphs) {
      throw std::invalid_argument(
          name + "_soft_labels.txt: expected one line per graph");
    }
    for (int g = 0; g < num_graphs; ++g) {
      const std::string context =
          name + "_soft_labels.txt line " + std::to_string(g + 1);
      const auto fields = split(soft_lines[g], ',');
      if (static_cast<int>(fields.size()) != num_classes) {
        throw std::invalid_argument(context + ": expected " +
                                    std::to_string(num_classes) + " values");
      }
      Eigen::VectorXd row(num_classes);
      for (int j = 0; j < num_classes; ++j) {
        row(j) = parse_number<double>(fields[j], context);
      }
      soft_labels[g] = std::move(row);
    }
  }

  Dataset out;
  out.name = name;
  out.num_classes = num_classes;
  out.class_labels = std::move(class_labels);
  out.features_synthesized = !all_features.has_value();

  // The indicator may interleave graphs; map each node back by graph order.
  std::vector<std::vector<int>> graph_nodes(num_graphs);
  for (int i = 0; i < total_nodes; ++i) {
    graph_nodes[node_graph[i]].push_back(i);
  }

  for (int g = 0; g < num_graphs; ++g) {
    const int n = graph_size[g];
    Eigen::MatrixXd feat;
    if (all_features) {
      feat.resize(n, all_features->cols());
      for (int v = 0; v < n; ++v) {
        feat.row(v) = all_features->row(graph_nodes[g][v]);
      }
    } else {
      feat = Eigen::MatrixXd::Ones(n, 1);
    }
    out.graphs.emplace_back(n, std::move(edges[g]), std::move(feat),
                            label_index.at(raw_labels[g]),
                            std::move(soft_labels[g]));
  }
  out.validate();
  return out;
}

void save_tu_dataset(const Dataset& dataset, const fs::path& root,
                     const std::string& name) {
  if (dataset.graphs.empty()) {
    throw std::invalid_argument("save_tu_dataset: empty dataset");
  }
  dataset.validate();

  const fs::path dir = root / name;
  std::error_code ec;
  fs::create_directories(dir, ec);
  const auto open = [&](const std::string& suffix) {
    const fs::path path = dir / (name + suffix);
    std::ofstream out(path);
    if (!out) {
      throw std::invalid_argument("save_tu_dataset: cannot write " +
                                  path.string());
    }
    return out;
  };

  std::ofstream a_file = open("_A.txt");
  std::ofstream ind_file = open("_graph_indicator.txt");
  std::ofstream label_file = open("_graph_labels.txt");

  const bool write_features = !dataset.features_synthesized &&
                              dataset.graphs.front().features().has_value();
  std::ofstream attr_file;
  if (write_features) attr_file = open("_node_attributes.txt");

  const bool any_soft =
      std::any_of(dataset.graphs.begin(), dataset.graphs.end(),
                  [](const Graph& g) { return g.soft_label().has_value(); });
  std::ofstream soft_file;
  if (any_soft) soft_file = open("_soft_labels.txt");

  int offset = 0;
  for (std::size_t gi = 0; gi < dataset.graphs.size(); ++gi) {
    const Graph& g = dataset.graphs[gi];

    std::vector<Edge> directed;
    directed.reserve(2 * g.edges().size());
    for (const auto& [u, v] : g.edges()) {
      directed.emplace_back(u, v);
      directed.emplace_back(v, u);
    }
    std::sort(directed.begin(), directed.end());
    for (const auto& [u, v] : directed) {
      a_file << (offset + u + 1) << ", " << (offset + v + 1) << '\n';
    }

    for (int v = 0; v < g.num_nodes(); ++v) {
      ind_file << (gi + 1) << '\n';
      if (write_features) {
        const auto& feat = *g.features();
        for (Eigen::Index j = 0; j < feat.cols(); ++j) {
          if (j > 0) attr_file << ", ";
          attr_file << format_double(feat(v, j));
        }
        attr_file << '\n';
      }
    }

    const int label = *g.label();
    label_file << (dataset.class_labels.empty() ? label
                                                : dataset.class_labels[label])
               << '\n';

    if (any_soft) {
      Eigen::VectorXd soft = Eigen::VectorXd::Zero(dataset.num_classes);
      if (g.soft_label()) {
        soft = *g.soft_label();
      } else {
        soft(label) = 1.0;
      }
      for (int j = 0; j < dataset.num_classes; ++j) {
        if (j > 0) soft_file << ", ";
        soft_file << format_double(soft(j));
      }
      soft_file << '\n';
    }

    offset += g.num_nodes();
  }
}

}  // namespace graphmix
