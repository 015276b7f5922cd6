#include "ilb/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace ilb {

double choose_delta(long long n, int group_order, int d) {
  if (n < 2) throw std::invalid_argument("choose_delta: n must be >= 2");
  const double logn = std::log(static_cast<double>(n));
  return std::pow(logn / (static_cast<double>(n) * group_order),
                  1.0 / (d + 2));
}

bool horizon_in_regime(long long n, int group_order, int d) {
  return static_cast<double>(n) >=
         std::pow(static_cast<double>(group_order), 2.0 * d + 2.0);
}

UcbState::UcbState(int arms, long long horizon, double delta, double slack)
    : horizon_(horizon),
      delta_(delta),
      slack_(slack),
      bonus_base_(2.0 * std::log(static_cast<double>(horizon))),
      obs_(arms, 0),
      sum_(arms, 0.0),
      index_(arms, std::numeric_limits<double>::infinity()) {
  if (arms < 1 || horizon < 1) {
    throw std::invalid_argument("UcbState: bad arms/horizon");
  }
}

int UcbState::select() const {
  int best = 0;
  double best_index = index_[0];
  for (int i = 1; i < arms(); ++i) {
    if (index_[i] > best_index) {
      best = i;
      best_index = index_[i];
    }
  }
  return best;
}

void UcbState::observe(int i, double reward) {
  obs_[i] += 1;
  sum_[i] += reward;
  index_[i] = sum_[i] / obs_[i] + std::sqrt(bonus_base_ / obs_[i]) +
              3.0 * delta_ + slack_;
}

namespace {

class NeighborhoodMeshPolicy final : public MeshPolicy {
 public:
  // Fixed per-vertex observed sets.
  NeighborhoodMeshPolicy(std::shared_ptr<const DeltaNet> net,
                         std::vector<std::vector<int>> neighborhoods,
                         long long horizon, double delta, double slack)
      : net_(std::move(net)),
        neighborhoods_(std::move(neighborhoods)),
        state_(net_->size(), horizon, delta, slack) {
    for (int v = 0; v < net_->size(); ++v) {
      const auto& nb = neighborhoods_[v];
      if (!std::binary_search(nb.begin(), nb.end(), v)) {
        throw std::logic_error("mesh policy: vertex missing from its own set");
      }
    }
  }

  int select() override { return state_.select(); }

  const std::vector<int>& update(int arm, double reward) override {
    for (const int v : neighborhoods_[arm]) state_.observe(v, reward);
    return neighborhoods_[arm];
  }

  const Point& arm_point(int idx) const override {
    return net_->vertices[idx];
  }
  int arm_count() const override { return net_->size(); }
  const UcbState& state() const override { return state_; }

 private:
  std::shared_ptr<const DeltaNet> net_;
  std::vector<std::vector<int>> neighborhoods_;
  UcbState state_;
};

class TreeMeshPolicy final : public MeshPolicy {
 public:
  TreeMeshPolicy(std::shared_ptr<const DeltaNet> net,
                 std::shared_ptr<const FiniteGroup> group,
                 std::shared_ptr<const CoverTree> tree, long long horizon,
                 double delta)
      : net_(std::move(net)),
        group_(std::move(group)),
        tree_(std::move(tree)),
        state_(net_->size(), horizon, delta,
               tree_->slack(2.0 * delta)) {}

  int select() override { return state_.select(); }

  const std::vector<int>& update(int arm, double reward) override {
    last_ = approx_neighborhood(*tree_, *group_, net_->vertices[arm],
                                2.0 * state_.delta());
    if (!std::binary_search(last_.begin(), last_.end(), arm)) {
      throw std::logic_error("tree mesh policy: arm missing from its set");
    }
    for (const int v : last_) state_.observe(v, reward);
    return last_;
  }

  const Point& arm_point(int idx) const override {
    return net_->vertices[idx];
  }
  int arm_count() const override { return net_->size(); }
  const UcbState& state() const override { return state_; }

 private:
  std::shared_ptr<const DeltaNet> net_;
  std::shared_ptr<const FiniteGroup> group_;
  std::shared_ptr<const CoverTree> tree_;
  UcbState state_;
  std::vector<int> last_;
};

}  // namespace

std::unique_ptr<MeshPolicy> make_uniform_mesh_n(
    std::shared_ptr<const DeltaNet> net, std::shared_ptr<const FiniteGroup> g,
    long long horizon, double delta) {
  std::vector<std::vector<int>> neighborhoods(net->size());
  for (int v = 0; v < net->size(); ++v) {
    neighborhoods[v] =
        neighborhood_of_orbit(*g, *net, net->vertices[v], 2.0 * delta);
  }
  return std::make_unique<NeighborhoodMeshPolicy>(
      std::move(net), std::move(neighborhoods), horizon, delta, 0.0);
}

std::unique_ptr<MeshPolicy> make_uniform_mesh_n_tree(
    std::shared_ptr<const DeltaNet> net, std::shared_ptr<const FiniteGroup> g,
    std::shared_ptr<const CoverTree> tree, long long horizon, double delta) {
  return std::make_unique<TreeMeshPolicy>(std::move(net), std::move(g),
                                          std::move(tree), horizon, delta);
}

std::unique_ptr<MeshPolicy> make_uniform_mesh(
    std::shared_ptr<const DeltaNet> net, long long horizon, double delta) {
  std::vector<std::vector<int>> neighborhoods(net->size());
  for (int v = 0; v < net->size(); ++v) neighborhoods[v] = {v};
  return std::make_unique<NeighborhoodMeshPolicy>(
      std::move(net), std::move(neighborhoods), horizon, delta, 0.0);
}

std::unique_ptr<MeshPolicy> make_ucb_n(std::shared_ptr<const DeltaNet> net,
                                       std::shared_ptr<const OrbitGraph> graph,
                                       long long horizon, double delta) {
  if (graph->vertex_count != net->size()) {
    throw std::invalid_argument("make_ucb_n: graph/net size mismatch");
  }
  std::vector<std::vector<int>> neighborhoods(net->size());
  for (int v = 0; v < net->size(); ++v) {
    neighborhoods[v] = graph->neighbors(v);
    if (!std::binary_search(neighborhoods[v].begin(), neighborhoods[v].end(),
                            v)) {
      neighborhoods[v].insert(
          std::lower_bound(neighborhoods[v].begin(), neighborhoods[v].end(),
                           v),
          v);
    }
  }
  return std::make_unique<NeighborhoodMeshPolicy>(
      std::move(net), std::move(neighborhoods), horizon, delta, 0.0);
}

InvariantUcb1::InvariantUcb1(int num_arms,
                             std::vector<std::vector<int>> elements,
                             long long horizon)
    : num_arms_(num_arms),
      rep_of_arm_(num_arms, -1),
      state_(1, horizon, 0.0) {
  if (num_arms < 1) throw std::invalid_argument("InvariantUcb1: bad K");
  for (const auto& perm : elements) {
    if (static_cast<int>(perm.size()) != num_arms) {
      throw std::invalid_argument("InvariantUcb1: bad permutation size");
    }
    bool is_identity = true;
    for (int a = 0; a < num_arms; ++a) {
      if (perm[a] < 0 || perm[a] >= num_arms) {
        throw std::invalid_argument("InvariantUcb1: bad permutation entry");
      }
      if (perm[a] != a) is_identity = false;
    }
    // Free action: only the identity fixes any arm.
    if (!is_identity) {
      for (int a = 0; a < num_arms; ++a) {
        if (perm[a] == a) {
          throw std::invalid_argument(
              "InvariantUcb1: action is not free (fixed arm " +
              std::to_string(a) + ")");
        }
      }
    }
  }
  // Orbit representatives in ascending order.
  for (int a = 0; a < num_arms; ++a) {
    if (rep_of_arm_[a] >= 0) continue;
    const int slot = static_cast<int>(reps_.size());
    reps_.push_back(a);
    for (const auto& perm : elements) rep_of_arm_[perm[a]] = slot;
    rep_of_arm_[a] = slot;
  }
  state_ = UcbState(static_cast<int>(reps_.size()), horizon, 0.0);
}

int InvariantUcb1::select() { return reps_[state_.select()]; }

void InvariantUcb1::update(int arm, double reward) {
  state_.observe(rep_of_arm_.at(arm), reward);
}

}  // namespace ilb
