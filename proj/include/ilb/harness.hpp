#pragma once

#include <iosfwd>
#include <optional>

#include "ilb/environments.hpp"
#include "ilb/policies.hpp"

namespace ilb {

struct ExperimentConfig {
  int dim = 1;
  std::string group_kind = "trivial";
  std::string instance_kind = "smooth";  // smooth | bump | constant
  double instance_delta = 0.1;           // bump instances
  std::string algo = "uniform-mesh-n";
  long long horizon = 10000;
  std::optional<double> delta;  // auto when unset
  int replications = 1;
  std::uint64_t base_seed = 0;
  std::string engine = "brute";  // brute | tree
  std::string output_path;

  void validate() const;
  static ExperimentConfig from_json_file(const std::string& path);
};

struct RegretTrace {
  std::uint64_t seed = 0;
  std::vector<double> instantaneous;
  std::vector<double> cumulative;
  std::vector<int> arms;            // chosen vertex per round
  std::vector<int> observed_sizes;  // observed-set size per round

  double final_regret() const {
    return cumulative.empty() ? 0.0 : cumulative.back();
  }
};

RegretTrace run_episode(const RewardInstance& env, MeshPolicy& policy,
                        long long horizon, std::uint64_t seed);

struct SweepRow {
  int group_order = 0;
  double delta = 0;
  long long horizon = 0;
  std::uint64_t seed = 0;
  double final_regret = 0;
  double wall_ms = 0;
  int clique_count = 0;
  int net_size = 0;
};

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows);

// Runs the configured experiment for each replication seed; rows sorted by
// seed. Mean reward values are cached per net vertex.
std::vector<SweepRow> run_sweep(const ExperimentConfig& config);

// Finite warm-up: K tiled Bernoulli arms invariant under the cyclic shift
// by K/order; invariant_ucb1 plays orbit representatives.
std::vector<SweepRow> run_invariant_ucb1_sweep(int arms, int cyclic_order,
                                               long long horizon,
                                               int replications,
                                               std::uint64_t base_seed);

struct ScalingFit {
  double slope = 0;
  double stderr_ = 0;
};

// Least-squares slope of log(y) against log(x).
ScalingFit fit_scaling(const std::vector<double>& x,
                       const std::vector<double>& y);

struct LemmaCheckRow {
  double delta = 0;
  int net_size = 0;
  int domain_cover_size = 0;  // |V_Dbar|
  int clique_count = 0;
  int packing_size = 0;  // |W|
  double cover_ratio = 0;     // |V_Dbar| * |G| * delta^d
  double clique_ratio = 0;    // cliques * |G| * delta^d
  double packing_ratio = 0;   // |W| * |G| * delta^d
};

struct LemmaCheckReport {
  std::vector<LemmaCheckRow> rows;
  bool cover_bounded = false;
  bool clique_bounded = false;
  bool packing_bounded = false;

  bool pass() const { return cover_bounded && clique_bounded && packing_bounded; }
};

// Ratio tables across a delta ladder; pass when each sequence stays within
// a x25 multiplicative band (the theory's constants are not numeric, so
// only boundedness is checkable).
LemmaCheckReport lemma_checks(const std::string& group_kind, int dim,
                              const std::vector<double>& deltas,
                              std::uint64_t seed);

// RFC-4180 field quoting.
std::string csv_field(const std::string& value);

}  // namespace ilb
