// Command-line front end: estimate per-class graphons, run mixup
// augmentation, corrupt datasets, and evaluate densities and bounds.
// Exit codes: 0 success, 2 validation/usage error, 1 internal error.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "graphmix/analysis.hpp"
#include "graphmix/augment.hpp"
#include "graphmix/graphon_io.hpp"
#include "graphmix/pipeline.hpp"
#include "graphmix/rng.hpp"
#include "graphmix/tu_io.hpp"

namespace {

using nlohmann::json;

struct EstimatorFlags {
  std::string method = "lg";
  std::string k = "auto";
  double usvt_eta = 2.02;
  int sas_window = 5;
  int lg_blocks = 0;  // 0 = default

  graphmix::EstimatorConfig to_config() const {
    graphmix::EstimatorConfig config;
    config.method = graphmix::estimator_method_from_string(method);
    if (k != "auto") config.k = std::stoi(k);
    config.usvt_eta = usvt_eta;
    config.sas_window = sas_window;
    if (lg_blocks > 0) config.lg_blocks = lg_blocks;
    return config;
  }
};

void add_estimator_flags(CLI::App* cmd, EstimatorFlags& flags) {
  cmd->add_option("--method", flags.method, "mean|lg|usvt|sas")
      ->default_val("lg");
  cmd->add_option("--k", flags.k, "partition count or 'auto'")
      ->default_val("auto");
  cmd->add_option("--usvt-eta", flags.usvt_eta,
                  "singular value threshold multiplier");
  cmd->add_option("--sas-window", flags.sas_window, "odd box filter width");
  cmd->add_option("--lg-blocks", flags.lg_blocks,
                  "block count for lg (default ceil(sqrt(k)))");
}

graphmix::Motif motif_from_flag(const std::string& spec) {
  if (spec.find('=') != std::string::npos) return graphmix::Motif::parse(spec);
  return graphmix::Motif::named(spec);
}

std::filesystem::path class_output_path(const std::filesystem::path& out,
                                        int cls) {
  std::filesystem::path p = out;
  const std::string stem = p.stem().string();
  const std::string ext = p.extension().string();
  p.replace_filename(stem + "_class" + std::to_string(cls) + ext);
  return p;
}

int cmd_estimate(const std::string& root, const std::string& name,
                 const EstimatorFlags& flags, const std::string& out,
                 std::uint64_t seed) {
  const graphmix::Dataset dataset = graphmix::load_tu_dataset(root, name);
  graphmix::EstimatorConfig config = flags.to_config();

  for (int cls = 0; cls < dataset.num_classes; ++cls) {
    std::vector<graphmix::Graph> graphs;
    for (const auto& g : dataset.graphs) {
      if (*g.label() == cls) graphs.push_back(g);
    }
    bool svd_fallback = false;
    const graphmix::StepGraphon graphon =
        graphmix::estimate_graphon(graphs, config, &svd_fallback);
    if (svd_fallback) {
      std::cerr << "warning: SVD did not converge for class " << cls
                << "; falling back to the empirical mean\n";
    }
    Eigen::VectorXd label = Eigen::VectorXd::Zero(dataset.num_classes);
    label(cls) = 1.0;

    graphmix::GraphonMeta meta;
    meta.estimator = graphmix::to_string(config.method);
    meta.source_class = cls;
    meta.seed = seed;

    const auto path = dataset.num_classes > 1
                          ? class_output_path(out, cls)
                          : std::filesystem::path(out);
    graphmix::save_graphon_json({graphon, label}, meta, path);
    std::cerr << "wrote " << path.string() << "\n";
  }
  return 0;
}

int cmd_mixup(const std::string& root, const std::string& name,
              const EstimatorFlags& flags, graphmix::PipelineConfig config,
              bool batch, const std::string& out_root,
              std::string out_name) {
  const graphmix::Dataset dataset = graphmix::load_tu_dataset(root, name);
  config.estimator = flags.to_config();
  config.k = config.estimator.k;

  const graphmix::Dataset augmented =
      batch ? graphmix::run_mixup_batch(dataset, config)
            : graphmix::run_mixup(dataset, config);
  if (out_name.empty()) out_name = name + "-aug";
  graphmix::Dataset named = augmented;
  named.name = out_name;
  graphmix::save_tu_dataset(named, out_root, out_name);
  std::cerr << "wrote " << (std::filesystem::path(out_root) / out_name).string()
            << " (" << named.graphs.size() << " graphs)\n";
  return 0;
}

int cmd_corrupt(const std::string& root, const std::string& name,
                const std::string& kind, double ratio, std::uint64_t seed,
                const std::string& out_root, std::string out_name) {
  const graphmix::Dataset dataset = graphmix::load_tu_dataset(root, name);
  graphmix::CorruptionSpec spec;
  const std::map<std::string, graphmix::CorruptionKind> kinds{
      {"label", graphmix::CorruptionKind::label},
      {"edge-remove", graphmix::CorruptionKind::edge_remove},
      {"edge-add", graphmix::CorruptionKind::edge_add}};
  const auto it = kinds.find(kind);
  if (it == kinds.end()) {
    throw std::invalid_argument("unknown corruption kind: " + kind);
  }
  spec.kind = it->second;
  spec.ratio = ratio;
  spec.seed = seed;

  graphmix::Dataset corrupted = graphmix::corrupt(dataset, spec);
  if (out_name.empty()) out_name = name + "-corrupt";
  corrupted.name = out_name;
  graphmix::save_tu_dataset(corrupted, out_root, out_name);
  std::cerr << "wrote " << (std::filesystem::path(out_root) / out_name).string()
            << "\n";
  return 0;
}

json report_to_json(const graphmix::BoundReport& report) {
  return json{{"lhs", report.lhs},
              {"rhs", report.rhs},
              {"satisfied", report.satisfied},
              {"vacuous", report.vacuous},
              {"inputs", report.inputs_digest}};
}

graphmix::StepGraphon random_graphon(int k, graphmix::Rng& rng) {
  Eigen::MatrixXd w(k, k);
  for (int i = 0; i < k; ++i) {
    for (int j = i; j < k; ++j) {
      w(i, j) = w(j, i) = rng.uniform();
    }
  }
  Eigen::MatrixXd x(k, 1);
  for (int i = 0; i < k; ++i) x(i, 0) = rng.uniform();
  return graphmix::StepGraphon{std::move(w), std::move(x)};
}

int cmd_verify_theorem1(int trials, int k, std::uint64_t seed,
                        const std::vector<std::string>& motif_names) {
  std::vector<graphmix::Motif> motifs;
  for (const auto& name : motif_names) motifs.push_back(motif_from_flag(name));

  json reports = json::array();
  bool all_satisfied = true;
  for (int trial = 0; trial < trials; ++trial) {
    graphmix::Rng rng(graphmix::split_seed(seed, trial));
    const auto wg = random_graphon(k, rng);
    const auto wh = random_graphon(k, rng);
    for (const auto& motif : motifs) {
      for (int step = 1; step <= 9; ++step) {
        const double lambda = step / 10.0;
        const auto report =
            graphmix::check_theorem1(wg, wh, motif, lambda);
        all_satisfied = all_satisfied && report.satisfied;
        if (!report.satisfied) reports.push_back(report_to_json(report));
      }
    }
  }
  json out{{"check", "theorem1"},
           {"trials", trials},
           {"k", k},
           {"all_satisfied", all_satisfied},
           {"violations", reports}};
  std::cout << out.dump(2) << "\n";
  return all_satisfied ? 0 : 1;
}

int cmd_verify_theorem2(int k, int n, double epsilon, int trials,
                        std::uint64_t seed, const std::string& motif_name) {
  graphmix::Rng rng(graphmix::split_seed(seed, 0));
  const auto wg = random_graphon(k, rng);
  const auto wh = random_graphon(k, rng);
  const double lambda = rng.uniform();
  graphmix::StepGraphon mixed{lambda * wg.w + (1.0 - lambda) * wh.w,
                              lambda * wg.x + (1.0 - lambda) * wh.x};

  const auto report = graphmix::check_theorem2(
      mixed, motif_from_flag(motif_name), n, epsilon, trials,
      graphmix::split_seed(seed, 1));
  json out{{"check", "theorem2"}, {"report", report_to_json(report)}};
  std::cout << out.dump(2) << "\n";
  return report.satisfied ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Graphon-based mixup augmentation and analysis for graph "
               "classification datasets"};
  app.require_subcommand(1);

  std::string root, name, out, out_root, out_name;
  std::uint64_t seed = 42;
  EstimatorFlags estimator;

  // estimate
  auto* estimate = app.add_subcommand(
      "estimate", "estimate a graphon per class, write graphon JSON files");
  estimate->add_option("--data-root", root)->required();
  estimate->add_option("--name", name)->required();
  add_estimator_flags(estimate, estimator);
  estimate->add_option("--out", out, "output path; classes get a suffix")
      ->required();
  estimate->add_option("--seed", seed);

  // mixup
  auto* mixup = app.add_subcommand(
      "mixup", "augment a dataset with graphon-mixup synthetic graphs");
  graphmix::PipelineConfig pipeline;
  bool batch = false;
  std::string sample_k = "auto";
  mixup->add_option("--data-root", root)->required();
  mixup->add_option("--name", name)->required();
  add_estimator_flags(mixup, estimator);
  mixup->add_option("--lambda-low", pipeline.lambda_low)->default_val(0.1);
  mixup->add_option("--lambda-high", pipeline.lambda_high)->default_val(0.2);
  mixup->add_option("--aug-ratio", pipeline.aug_ratio)->default_val(0.2);
  mixup->add_option("--sample-k", sample_k,
                    "node count of generated graphs, or 'auto'");
  mixup->add_flag("--batch", batch, "estimate and mix per batch");
  mixup->add_option("--batch-size", pipeline.batch_size)->default_val(128);
  mixup->add_option("--seed", seed);
  mixup->add_option("--out-root", out_root)->required();
  mixup->add_option("--out-name", out_name, "defaults to <name>-aug");

  // corrupt
  auto* corrupt = app.add_subcommand(
      "corrupt", "apply label or topology corruption to a dataset");
  std::string kind = "label";
  double ratio = 0.0;
  corrupt->add_option("--data-root", root)->required();
  corrupt->add_option("--name", name)->required();
  corrupt->add_option("--kind", kind, "label|edge-remove|edge-add")
      ->required();
  corrupt->add_option("--ratio", ratio)->required();
  corrupt->add_option("--seed", seed);
  corrupt->add_option("--out-root", out_root)->required();
  corrupt->add_option("--out-name", out_name, "defaults to <name>-corrupt");

  // analyze
  auto* analyze = app.add_subcommand(
      "analyze", "densities, degree marginal and collision probability");
  analyze->require_subcommand(1);
  std::string graphon_path, motif_name = "triangle";
  auto* density = analyze->add_subcommand("density",
                                          "motif density of a graphon");
  density->add_option("--graphon", graphon_path)->required();
  density->add_option("--motif", motif_name,
                      "named motif or 'v=3; 0-1 1-2 2-0'");
  auto* degree = analyze->add_subcommand("degree", "degree marginal");
  degree->add_option("--graphon", graphon_path)->required();
  auto* collision = analyze->add_subcommand(
      "collision", "probability two sampled adjacency matrices coincide");
  collision->add_option("--graphon", graphon_path)->required();

  // verify
  auto* verify =
      app.add_subcommand("verify", "run the density-bound checkers");
  verify->require_subcommand(1);
  int trials = 100, k = 8, n = 2000;
  double epsilon = 0.3;
  std::vector<std::string> motif_names{"edge", "triangle", "path3"};
  auto* theorem1 = verify->add_subcommand(
      "theorem1", "mixed-graphon density bound on random graphon pairs");
  theorem1->add_option("--trials", trials)->default_val(100);
  theorem1->add_option("--k", k)->default_val(8);
  theorem1->add_option("--motifs", motif_names)->delimiter(',');
  theorem1->add_option("--seed", seed);
  auto* theorem2 = verify->add_subcommand(
      "theorem2", "sampling concentration of a mixed graphon");
  theorem2->add_option("--k", k)->default_val(8);
  theorem2->add_option("--n", n)->default_val(2000);
  theorem2->add_option("--epsilon", epsilon)->default_val(0.3);
  theorem2->add_option("--trials", trials)->default_val(1000);
  theorem2->add_option("--motif", motif_name)->default_val("triangle");
  theorem2->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (estimate->parsed()) {
      return cmd_estimate(root, name, estimator, out, seed);
    }
    if (mixup->parsed()) {
      pipeline.seed = seed;
      if (sample_k != "auto") pipeline.sample_k = std::stoi(sample_k);
      return cmd_mixup(root, name, estimator, pipeline, batch, out_root,
                       out_name);
    }
    if (corrupt->parsed()) {
      return cmd_corrupt(root, name, kind, ratio, seed, out_root, out_name);
    }
    if (analyze->parsed()) {
      const auto [graphon, meta] = graphmix::load_graphon_json(graphon_path);
      json out_json;
      if (density->parsed()) {
        const auto motif = motif_from_flag(motif_name);
        out_json = {{"motif", motif_name},
                    {"density", graphmix::hom_density_graphon(
                                    motif, graphon.graphon)}};
      } else if (degree->parsed()) {
        const Eigen::VectorXd marginal =
            graphmix::degree_function(graphon.graphon);
        out_json = {{"degree", std::vector<double>(
                                   marginal.data(),
                                   marginal.data() + marginal.size())}};
      } else {
        const auto c = graphmix::collision_probability(graphon.graphon);
        out_json = {{"probability", c.probability},
                    {"log_probability", c.log_probability}};
      }
      std::cout << out_json.dump(2) << "\n";
      return 0;
    }
    if (verify->parsed()) {
      if (theorem1->parsed()) {
        return cmd_verify_theorem1(trials, k, seed, motif_names);
      }
      return cmd_verify_theorem2(k, n, epsilon, trials, seed, motif_name);
    }
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
