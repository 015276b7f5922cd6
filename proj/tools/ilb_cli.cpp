#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "ilb/harness.hpp"

namespace {

std::uint64_t default_seed() {
  if (const char* env = std::getenv("BANDIT_LAB_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

int cmd_net(int dim, double delta, int samples, const std::string& csv_path) {
  const ilb::ArmSpace space = ilb::ArmSpace::unit_box(dim);
  const ilb::DeltaNet net = ilb::build_grid_net(space, delta);
  const auto bounds = ilb::proposition1_bounds(space, delta);
  ilb::Rng rng = ilb::make_rng(default_seed(), 1);
  const auto report = ilb::covering_check(net, samples, rng);

  std::cout << "dim=" << dim << " delta=" << delta
            << " vertices=" << net.size() << " spacing=" << net.spacing
            << "\n"
            << "covering-number bracket: [" << bounds.lower << ", "
            << bounds.upper << "]\n"
            << "covering check: samples=" << report.samples
            << " max_min_distance=" << report.max_min_distance
            << " pass=" << (report.pass ? "true" : "false") << "\n";
  if (!csv_path.empty()) {
    std::ofstream out(csv_path);
    out << "dim,delta,vertices,bracket_lower,bracket_upper,"
           "max_min_distance,pass\n"
        << dim << ',' << delta << ',' << net.size() << ',' << bounds.lower
        << ',' << bounds.upper << ',' << report.max_min_distance << ','
        << (report.pass ? 1 : 0) << '\n';
  }
  return report.pass ? 0 : 1;
}

int cmd_verify_group(const std::string& kind, int dim, bool emit_json) {
  const ilb::FiniteGroup group = ilb::make_group(kind, dim);
  ilb::Rng rng = ilb::make_rng(default_seed(), 2);
  const auto report =
      ilb::verify_group(group.elements(), group.space(), 256, rng);
  std::cout << "group=" << kind << " dim=" << dim
            << " order=" << group.order() << "\n"
            << "orthogonal=" << report.orthogonal
            << " (max residual " << report.max_orthogonality_residual << ")\n"
            << "closed=" << report.closed
            << " identity=" << report.has_identity
            << " inverses=" << report.has_inverses
            << " no_duplicates=" << report.no_duplicates << "\n"
            << "preserves_space=" << report.preserves_space
            << " (max violation " << report.max_space_violation << ")\n"
            << "pass=" << (report.pass() ? "true" : "false") << "\n";
  if (emit_json) std::cout << ilb::group_to_json(group) << "\n";
  return report.pass() ? 0 : 1;
}

int cmd_graph_stats(const std::string& kind, int dim, double delta,
                    const std::string& engine) {
  auto group = std::make_shared<ilb::FiniteGroup>(ilb::make_group(kind, dim));
  const ilb::DeltaNet net = ilb::build_grid_net(group->space(), delta);
  ilb::Rng base_rng = ilb::make_rng(default_seed(), 3);
  const ilb::Point base = ilb::find_free_point(*group, base_rng);
  const auto dom = ilb::dirichlet_domain(*group, base);

  ilb::Rng cover_rng = ilb::make_rng(default_seed(), 4);
  const auto domain_vertices =
      ilb::vertices_covering_closure(net, *group, dom, cover_rng);
  ilb::Rng clique_rng = ilb::make_rng(default_seed(), 5);
  const auto cover = ilb::clique_cover(net, *group, dom, delta, clique_rng);

  long long edge_count = 0;
  if (engine == "tree") {
    const ilb::CoverTree tree(net.space, net);
    for (int v = 0; v < net.size(); ++v) {
      edge_count += static_cast<long long>(
          ilb::approx_neighborhood(tree, *group, net.vertices[v], 2 * delta)
              .size());
    }
  } else {
    const auto graph = ilb::build_graph(net, *group, 2 * delta);
    for (int v = 0; v < net.size(); ++v) {
      edge_count += static_cast<long long>(graph.neighbors(v).size());
    }
  }

  const double ratio =
      cover.size() * group->order() * std::pow(delta, dim);
  std::cout << "delta,net_size,domain_cover_size,clique_count,ratio,"
               "avg_neighborhood\n"
            << delta << ',' << net.size() << ',' << domain_vertices.size()
            << ',' << cover.size() << ',' << ratio << ','
            << static_cast<double>(edge_count) / net.size() << "\n";
  return 0;
}

int cmd_ensemble(const std::string& kind, int dim, double delta, int index) {
  auto group = std::make_shared<ilb::FiniteGroup>(ilb::make_group(kind, dim));
  ilb::Rng base_rng = ilb::make_rng(default_seed(), 6);
  const ilb::Point base = ilb::find_free_point(*group, base_rng);
  const auto dom = ilb::dirichlet_domain(*group, base);
  ilb::Rng pack_rng = ilb::make_rng(default_seed(), 7);
  const auto pack = ilb::strict_packing_of_domain(*group, dom, delta, pack_rng);

  std::cout << "group=" << kind << " |W|=" << pack.points.size()
            << " delta=" << delta << "\n";
  for (std::size_t i = 0; i < pack.points.size(); ++i) {
    std::cout << "W[" << i << "] =";
    for (int k = 0; k < pack.points[i].size(); ++k) {
      std::cout << ' ' << pack.points[i][k];
    }
    std::cout << "\n";
  }
  if (index >= static_cast<int>(pack.points.size())) {
    std::cerr << "index " << index << " out of range\n";
    return 1;
  }
  const auto env = ilb::make_bump_instance(pack, index, group);
  ilb::Rng verify_rng = ilb::make_rng(default_seed(), 8);
  const auto report = ilb::verify_instance(env, 10000, 10000, verify_rng);
  std::cout << "instance: " << env.descriptor
            << " optimum=" << env.optimum_value << "\n"
            << "lipschitz_ratio=" << report.max_lipschitz_ratio
            << " invariance_residual=" << report.max_invariance_residual
            << " range=[" << report.min_value << ", " << report.max_value
            << "] pass=" << (report.pass() ? "true" : "false") << "\n";
  return report.pass() ? 0 : 1;
}

int cmd_lemma_checks(const std::string& kind, int dim,
                     std::vector<double> deltas) {
  if (deltas.empty()) deltas = {0.1, 0.05, 0.025};
  const auto report = ilb::lemma_checks(kind, dim, deltas, default_seed());
  std::cout << "delta,net_size,domain_cover,cliques,packing,cover_ratio,"
               "clique_ratio,packing_ratio\n";
  for (const auto& row : report.rows) {
    std::cout << row.delta << ',' << row.net_size << ','
              << row.domain_cover_size << ',' << row.clique_count << ','
              << row.packing_size << ',' << row.cover_ratio << ','
              << row.clique_ratio << ',' << row.packing_ratio << "\n";
  }
  std::cout << "cover_bounded=" << report.cover_bounded
            << " clique_bounded=" << report.clique_bounded
            << " packing_bounded=" << report.packing_bounded << "\n";
  return report.pass() ? 0 : 1;
}

int run_config(const ilb::ExperimentConfig& config) {
  const auto rows = ilb::run_sweep(config);
  if (!config.output_path.empty()) {
    std::ofstream out(config.output_path);
    ilb::write_sweep_csv(out, rows);
  }
  ilb::write_sweep_csv(std::cout, rows);
  double mean = 0;
  for (const auto& r : rows) mean += r.final_regret;
  mean /= rows.size();
  std::cout << "mean final regret: " << mean << " over " << rows.size()
            << " replication(s)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant Lipschitz bandit simulation lab"};
  app.require_subcommand(1);

  int dim = 1;
  double delta = 0.1;
  int samples = 10000;
  int index = 0;
  std::string kind = "trivial";
  std::string engine = "brute";
  std::string csv_path;
  bool emit_json = false;
  std::vector<double> deltas;

  auto* net_cmd = app.add_subcommand("net", "Build a grid net and report it");
  net_cmd->add_option("--dim", dim)->required();
  net_cmd->add_option("--delta", delta)->required();
  net_cmd->add_option("--samples", samples);
  net_cmd->add_option("--csv", csv_path);

  auto* verify_cmd =
      app.add_subcommand("verify-group", "Verify a group constructor");
  verify_cmd->add_option("--group", kind)->required();
  verify_cmd->add_option("--dim", dim)->required();
  verify_cmd->add_flag("--json", emit_json, "Print the group as JSON");

  auto* graph_cmd =
      app.add_subcommand("graph-stats", "Orbit graph and clique cover stats");
  graph_cmd->add_option("--group", kind)->required();
  graph_cmd->add_option("--dim", dim)->required();
  graph_cmd->add_option("--delta", delta)->required();
  graph_cmd->add_option("--engine", engine)
      ->check(CLI::IsMember({"brute", "tree"}));

  auto* ensemble_cmd =
      app.add_subcommand("ensemble", "Lower-bound ensemble instance");
  ensemble_cmd->add_option("--group", kind)->required();
  ensemble_cmd->add_option("--dim", dim);
  ensemble_cmd->add_option("--delta", delta)->required();
  ensemble_cmd->add_option("--index", index);

  auto* lemma_cmd = app.add_subcommand("lemma-checks", "Ratio-band tables");
  lemma_cmd->add_option("--group", kind)->required();
  lemma_cmd->add_option("--dim", dim)->required();
  lemma_cmd->add_option("--deltas", deltas)->delimiter(',');

  ilb::ExperimentConfig config;
  config.base_seed = default_seed();
  std::string config_path;
  std::string delta_arg = "auto";
  int finite_arms = 12;
  int finite_order = 1;

  const auto add_run_options = [&](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--dim", config.dim);
    cmd->add_option("--group", config.group_kind);
    cmd->add_option("--instance", config.instance_kind);
    cmd->add_option("--instance-delta", config.instance_delta);
    cmd->add_option("--algo", config.algo)
        ->check(CLI::IsMember(
            {"uniform-mesh", "uniform-mesh-n", "ucb-n", "invariant-ucb1"}));
    cmd->add_option("--arms", finite_arms, "invariant-ucb1: arm count");
    cmd->add_option("--cyclic-order", finite_order,
                    "invariant-ucb1: cyclic group order");
    cmd->add_option("--horizon", config.horizon);
    cmd->add_option("--delta", delta_arg, "'auto' or a value");
    cmd->add_option("--replications", config.replications);
    cmd->add_option("--seed", config.base_seed);
    cmd->add_option("--engine", config.engine)
        ->check(CLI::IsMember({"brute", "tree"}));
    cmd->add_option("--out", config.output_path);
  };
  auto* run_cmd = app.add_subcommand("run", "Run one experiment");
  add_run_options(run_cmd);
  auto* sweep_cmd = app.add_subcommand("sweep", "Run replicated experiments");
  add_run_options(sweep_cmd);

  CLI11_PARSE(app, argc, argv);

  try {
    if (net_cmd->parsed()) return cmd_net(dim, delta, samples, csv_path);
    if (verify_cmd->parsed()) return cmd_verify_group(kind, dim, emit_json);
    if (graph_cmd->parsed()) return cmd_graph_stats(kind, dim, delta, engine);
    if (ensemble_cmd->parsed()) return cmd_ensemble(kind, dim, delta, index);
    if (lemma_cmd->parsed()) return cmd_lemma_checks(kind, dim, deltas);
    if (run_cmd->parsed() || sweep_cmd->parsed()) {
      if (!config_path.empty()) {
        ilb::ExperimentConfig file_config =
            ilb::ExperimentConfig::from_json_file(config_path);
        // Flags win over the file: re-parse flags onto the file values.
        const auto* cmd = run_cmd->parsed() ? run_cmd : sweep_cmd;
        if (cmd->count("--dim") == 0) config.dim = file_config.dim;
        if (cmd->count("--group") == 0) config.group_kind = file_config.group_kind;
        if (cmd->count("--instance") == 0) config.instance_kind = file_config.instance_kind;
        if (cmd->count("--instance-delta") == 0) config.instance_delta = file_config.instance_delta;
        if (cmd->count("--algo") == 0) config.algo = file_config.algo;
        if (cmd->count("--horizon") == 0) config.horizon = file_config.horizon;
        if (cmd->count("--delta") == 0) config.delta = file_config.delta;
        if (cmd->count("--replications") == 0) config.replications = file_config.replications;
        if (cmd->count("--seed") == 0) config.base_seed = file_config.base_seed;
        if (cmd->count("--engine") == 0) config.engine = file_config.engine;
        if (cmd->count("--out") == 0) config.output_path = file_config.output_path;
      }
      if (delta_arg != "auto") config.delta = std::stod(delta_arg);
      if (config.algo == "invariant-ucb1") {
        const auto rows = ilb::run_invariant_ucb1_sweep(
            finite_arms, finite_order, config.horizon, config.replications,
            config.base_seed);
        if (!config.output_path.empty()) {
          std::ofstream out(config.output_path);
          ilb::write_sweep_csv(out, rows);
        }
        ilb::write_sweep_csv(std::cout, rows);
        return 0;
      }
      if (!ilb::horizon_in_regime(config.horizon,
                                  ilb::make_group(config.group_kind, config.dim)
                                      .order(),
                                  config.dim)) {
        std::cerr << "warning: horizon below the |G|^(2d+2) regime; the "
                     "regret guarantee may not apply\n";
      }
      return run_config(config);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
