#include "graphmix/graphon_io.hpp"

#include <fstream>
#include <stdexcept>
#include <vector>

#include <json.hpp>

namespace graphmix {

namespace {

std::vector<double> row_major(const Eigen::MatrixXd& m) {
  std::vector<double> out;
  out.reserve(m.size());
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out.push_back(m(i, j));
  }
  return out;
}

Eigen::MatrixXd from_row_major(const std::vector<double>& values, int rows,
                               int cols, const std::string& field) {
  if (static_cast<int>(values.size()) != rows * cols) {
    throw std::invalid_argument("graphon json: field '" + field +
                                "' has wrong length");
  }
  Eigen::MatrixXd m(rows, cols);
  int idx = 0;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) m(i, j) = values[idx++];
  }
  return m;
}

}  // namespace

void save_graphon_json(const LabeledGraphon& graphon, const GraphonMeta& meta,
                       const std::filesystem::path& path) {
  graphon.validate();
  nlohmann::json j;
  j["k"] = graphon.graphon.k();
  j["d"] = graphon.graphon.feature_dim();
  j["w"] = row_major(graphon.graphon.w);
  j["x"] = row_major(graphon.graphon.x);
  j["label"] = std::vector<double>(graphon.label.data(),
                                   graphon.label.data() + graphon.label.size());
  j["meta"] = {{"estimator", meta.estimator},
               {"source_class", meta.source_class},
               {"seed", meta.seed}};

  std::ofstream out(path);
  if (!out) {
    throw std::invalid_argument("cannot write graphon json: " + path.string());
  }
  out << j.dump(2) << '\n';
}

std::pair<LabeledGraphon, GraphonMeta> load_graphon_json(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read graphon json: " + path.string());
  }
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument("malformed graphon json " + path.string() +
                                ": " + e.what());
  }

  const int k = j.at("k").get<int>();
  const int d = j.at("d").get<int>();
  LabeledGraphon graphon;
  graphon.graphon.w =
      from_row_major(j.at("w").get<std::vector<double>>(), k, k, "w");
  graphon.graphon.x =
      from_row_major(j.at("x").get<std::vector<double>>(), k, d, "x");
  const auto label = j.at("label").get<std::vector<double>>();
  graphon.label = Eigen::Map<const Eigen::VectorXd>(
      label.data(), static_cast<Eigen::Index>(label.size()));
  graphon.validate();

  GraphonMeta meta;
  if (j.contains("meta")) {
    const auto& m = j.at("meta");
    meta.estimator = m.value("estimator", std::string{});
    meta.source_class = m.value("source_class", -1);
    meta.seed = m.value("seed", std::uint64_t{0});
  }
  return {std::move(graphon), meta};
}

}  // namespace graphmix
