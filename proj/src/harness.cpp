#include "ilb/harness.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <ostream>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ilb {

void ExperimentConfig::validate() const {
  if (horizon < 1) throw std::invalid_argument("config: horizon must be >= 1");
  if (replications < 1) {
    throw std::invalid_argument("config: replications must be >= 1");
  }
  if (dim < 1) throw std::invalid_argument("config: dim must be >= 1");
  if (engine != "brute" && engine != "tree") {
    throw std::invalid_argument("config: engine must be brute or tree");
  }
  if (delta && !(*delta > 0)) {
    throw std::invalid_argument("config: delta must be positive");
  }
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  nlohmann::json j;
  in >> j;
  ExperimentConfig c;
  if (j.contains("dim")) c.dim = j["dim"].get<int>();
  if (j.contains("group")) c.group_kind = j["group"].get<std::string>();
  if (j.contains("instance")) c.instance_kind = j["instance"].get<std::string>();
  if (j.contains("instance_delta")) c.instance_delta = j["instance_delta"].get<double>();
  if (j.contains("algo")) c.algo = j["algo"].get<std::string>();
  if (j.contains("horizon")) c.horizon = j["horizon"].get<long long>();
  if (j.contains("delta")) {
    if (j["delta"].is_string()) {
      if (j["delta"].get<std::string>() != "auto") {
        throw std::invalid_argument("config: delta must be a number or 'auto'");
      }
    } else {
      c.delta = j["delta"].get<double>();
    }
  }
  if (j.contains("replications")) c.replications = j["replications"].get<int>();
  if (j.contains("seed")) c.base_seed = j["seed"].get<std::uint64_t>();
  if (j.contains("engine")) c.engine = j["engine"].get<std::string>();
  if (j.contains("output")) c.output_path = j["output"].get<std::string>();
  c.validate();
  return c;
}

RegretTrace run_episode(const RewardInstance& env, MeshPolicy& policy,
                        long long horizon, std::uint64_t seed) {
  RegretTrace trace;
  trace.seed = seed;
  trace.instantaneous.reserve(horizon);
  trace.cumulative.reserve(horizon);
  Rng rng = make_rng(seed);

  // The policy plays a fixed vertex set; cache its mean values.
  std::vector<double> vertex_mean(policy.arm_count());
  for (int v = 0; v < policy.arm_count(); ++v) {
    vertex_mean[v] = env.mean(policy.arm_point(v));
  }

  double cumulative = 0;
  for (long long t = 0; t < horizon; ++t) {
    const int arm = policy.select();
    const double m = vertex_mean[arm];
    const double reward =
        env.noise == RewardNoise::bernoulli
            ? (uniform01(rng) < m ? 1.0 : 0.0)
            : sample_reward(env, policy.arm_point(arm), rng);
    const auto& observed = policy.update(arm, reward);
    trace.arms.push_back(arm);
    trace.observed_sizes.push_back(static_cast<int>(observed.size()));
    const double regret = env.optimum_value - m;
    cumulative += regret;
    trace.instantaneous.push_back(regret);
    trace.cumulative.push_back(cumulative);
  }
  return trace;
}

namespace {

RewardInstance build_instance(const ExperimentConfig& config,
                              std::shared_ptr<const FiniteGroup> group) {
  if (config.instance_kind == "constant") return make_constant_f0(group);
  if (config.instance_kind == "bump") {
    Rng base_rng = make_rng(config.base_seed, 1);
    const Point base = find_free_point(*group, base_rng);
    const DirichletDomain dom = dirichlet_domain(*group, base);
    Rng pack_rng = make_rng(config.base_seed, 2);
    const StrictPacking pack =
        strict_packing_of_domain(*group, dom, config.instance_delta, pack_rng);
    return make_bump_instance(pack, 0, group);
  }
  if (config.instance_kind == "smooth") {
    Rng smooth_rng = make_rng(config.base_seed, 3);
    const int per_axis = std::max(
        10, static_cast<int>(std::round(std::pow(1e6, 1.0 / config.dim))));
    return make_smooth_invariant_instance(group, smooth_rng, 5, per_axis);
  }
  throw std::invalid_argument("config: unknown instance kind '" +
                              config.instance_kind + "'");
}

std::unique_ptr<MeshPolicy> build_policy(const ExperimentConfig& config,
                                         std::shared_ptr<const DeltaNet> net,
                                         std::shared_ptr<const FiniteGroup> g,
                                         double delta) {
  if (config.algo == "uniform-mesh") {
    return make_uniform_mesh(net, config.horizon, delta);
  }
  if (config.algo == "uniform-mesh-n") {
    if (config.engine == "tree") {
      auto tree = std::make_shared<CoverTree>(net->space, *net);
      return make_uniform_mesh_n_tree(net, g, tree, config.horizon, delta);
    }
    return make_uniform_mesh_n(net, g, config.horizon, delta);
  }
  if (config.algo == "ucb-n") {
    auto graph =
        std::make_shared<OrbitGraph>(build_graph(*net, *g, 2.0 * delta));
    return make_ucb_n(net, graph, config.horizon, delta);
  }
  throw std::invalid_argument("config: unknown algo '" + config.algo + "'");
}

}  // namespace

std::vector<SweepRow> run_sweep(const ExperimentConfig& config) {
  config.validate();
  auto group = std::make_shared<FiniteGroup>(
      make_group(config.group_kind, config.dim));
  const double delta =
      config.delta ? *config.delta
                   : choose_delta(config.horizon, group->order(), config.dim);
  auto net = std::make_shared<DeltaNet>(
      build_grid_net(group->space(), delta));
  const RewardInstance env = build_instance(config, group);

  // Clique count reported per row; computed once.
  int clique_count = 0;
  {
    Rng rng = make_rng(config.base_seed, 4);
    const Point base = find_free_point(*group, rng);
    const DirichletDomain dom = dirichlet_domain(*group, base);
    Rng cover_rng = make_rng(config.base_seed, 5);
    clique_count = clique_cover(*net, *group, dom, delta, cover_rng).size();
  }

  std::vector<SweepRow> rows;
  for (int rep = 0; rep < config.replications; ++rep) {
    const std::uint64_t seed = derive_seed(config.base_seed, 100 + rep);
    const auto start = std::chrono::steady_clock::now();
    auto policy = build_policy(config, net, group, delta);
    const RegretTrace trace = run_episode(env, *policy, config.horizon, seed);
    const auto stop = std::chrono::steady_clock::now();
    SweepRow row;
    row.group_order = group->order();
    row.delta = delta;
    row.horizon = config.horizon;
    row.seed = seed;
    row.final_regret = trace.final_regret();
    row.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    row.clique_count = clique_count;
    row.net_size = net->size();
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.seed < b.seed; });
  return rows;
}

std::vector<SweepRow> run_invariant_ucb1_sweep(int arms, int cyclic_order,
                                               long long horizon,
                                               int replications,
                                               std::uint64_t base_seed) {
  if (arms < 1 || cyclic_order < 1 || arms % cyclic_order != 0) {
    throw std::invalid_argument(
        "run_invariant_ucb1_sweep: order must divide the arm count");
  }
  const int block = arms / cyclic_order;
  // Means tiled so the same reward vector serves every subgroup order.
  std::vector<double> means(arms);
  for (int a = 0; a < arms; ++a) {
    means[a] = block > 1 ? 0.35 + 0.3 * (a % block) / (block - 1) : 0.5;
  }
  const double best = *std::max_element(means.begin(), means.end());

  std::vector<std::vector<int>> elements;
  for (int k = 0; k < cyclic_order; ++k) {
    std::vector<int> perm(arms);
    for (int a = 0; a < arms; ++a) perm[a] = (a + k * block) % arms;
    elements.push_back(std::move(perm));
  }

  std::vector<SweepRow> rows;
  for (int rep = 0; rep < replications; ++rep) {
    const std::uint64_t seed = derive_seed(base_seed, 100 + rep);
    Rng rng = make_rng(seed);
    InvariantUcb1 policy(arms, elements, horizon);
    const auto start = std::chrono::steady_clock::now();
    double regret = 0;
    for (long long t = 0; t < horizon; ++t) {
      const int arm = policy.select();
      const double reward = uniform01(rng) < means[arm] ? 1.0 : 0.0;
      policy.update(arm, reward);
      regret += best - means[arm];
    }
    const auto stop = std::chrono::steady_clock::now();
    SweepRow row;
    row.group_order = cyclic_order;
    row.delta = 0;
    row.horizon = horizon;
    row.seed = seed;
    row.final_regret = regret;
    row.wall_ms =
        std::chrono::duration<double, std::milli>(stop - start).count();
    row.clique_count = static_cast<int>(policy.representatives().size());
    row.net_size = arms;
    rows.push_back(row);
  }
  std::sort(rows.begin(), rows.end(),
            [](const SweepRow& a, const SweepRow& b) { return a.seed < b.seed; });
  return rows;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\r\n") == std::string::npos) return value;
  std::string out = "\"";
  for (const char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << "group_order,delta,n,seed,final_regret,wall_ms,clique_count,net_size\n";
  for (const SweepRow& r : rows) {
    std::ostringstream line;
    line.precision(17);
    line << r.group_order << ',' << r.delta << ',' << r.horizon << ','
         << r.seed << ',' << r.final_regret << ',' << r.wall_ms << ','
         << r.clique_count << ',' << r.net_size;
    os << line.str() << '\n';
  }
}

ScalingFit fit_scaling(const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_scaling: need at least two points");
  }
  const int n = static_cast<int>(x.size());
  std::vector<double> lx(n), ly(n);
  for (int i = 0; i < n; ++i) {
    if (!(x[i] > 0) || !(y[i] > 0)) {
      throw std::invalid_argument("fit_scaling: log-log needs positive data");
    }
    lx[i] = std::log(x[i]);
    ly[i] = std::log(y[i]);
  }
  double mx = 0, my = 0;
  for (int i = 0; i < n; ++i) {
    mx += lx[i];
    my += ly[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sxx += (lx[i] - mx) * (lx[i] - mx);
    sxy += (lx[i] - mx) * (ly[i] - my);
  }
  if (sxx == 0) throw std::invalid_argument("fit_scaling: degenerate x data");
  ScalingFit fit;
  fit.slope = sxy / sxx;
  double rss = 0;
  for (int i = 0; i < n; ++i) {
    const double resid = ly[i] - my - fit.slope * (lx[i] - mx);
    rss += resid * resid;
  }
  fit.stderr_ = n > 2 ? std::sqrt(rss / (n - 2) / sxx) : 0.0;
  return fit;
}

namespace {

// Constant-boundedness heuristic: the bound constants are unspecified, so
// require max/min <= 25 across the ladder.
bool within_band(const std::vector<double>& values) {
  const double lo = *std::min_element(values.begin(), values.end());
  const double hi = *std::max_element(values.begin(), values.end());
  return lo > 0 && hi <= lo * 25.0;
}

}  // namespace

LemmaCheckReport lemma_checks(const std::string& group_kind, int dim,
                              const std::vector<double>& deltas,
                              std::uint64_t seed) {
  auto group = std::make_shared<FiniteGroup>(make_group(group_kind, dim));
  Rng base_rng = make_rng(seed, 11);
  const Point base = find_free_point(*group, base_rng);
  const DirichletDomain dom = dirichlet_domain(*group, base);

  LemmaCheckReport report;
  std::vector<double> cover_ratios, clique_ratios, packing_ratios;
  for (const double delta : deltas) {
    const DeltaNet net = build_grid_net(group->space(), delta);
    Rng cover_rng = make_rng(seed, 12);
    const auto domain_vertices =
        vertices_covering_closure(net, *group, dom, cover_rng);
    Rng clique_rng = make_rng(seed, 13);
    const CliqueCover cover = clique_cover(net, *group, dom, delta, clique_rng);
    Rng pack_rng = make_rng(seed, 14);
    const StrictPacking pack =
        strict_packing_of_domain(*group, dom, delta, pack_rng);

    LemmaCheckRow row;
    row.delta = delta;
    row.net_size = net.size();
    row.domain_cover_size = static_cast<int>(domain_vertices.size());
    row.clique_count = cover.size();
    row.packing_size = static_cast<int>(pack.points.size());
    const double scale = group->order() * std::pow(delta, dim);
    row.cover_ratio = row.domain_cover_size * scale;
    row.clique_ratio = row.clique_count * scale;
    row.packing_ratio = row.packing_size * scale;
    cover_ratios.push_back(row.cover_ratio);
    clique_ratios.push_back(row.clique_ratio);
    packing_ratios.push_back(row.packing_ratio);
    report.rows.push_back(row);
  }
  report.cover_bounded = within_band(cover_ratios);
  report.clique_bounded = within_band(clique_ratios);
  report.packing_bounded = within_band(packing_ratios);
  return report;
}

}  // namespace ilb
