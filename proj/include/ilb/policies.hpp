#pragma once

#include <memory>

#include "ilb/mesh_index.hpp"
#include "ilb/orbit_graph.hpp"

namespace ilb {

// Horizon-aware delta from the regret-optimal tuning; callers may override.
double choose_delta(long long n, int group_order, int d);
bool horizon_in_regime(long long n, int group_order, int d);

// Per-vertex UCB bookkeeping: observation counts, reward sums, and the
// index value mean + sqrt(2 log n / O) + 3*delta + slack.
class UcbState {
 public:
  UcbState(int arms, long long horizon, double delta, double slack = 0);

  int arms() const { return static_cast<int>(obs_.size()); }
  long long observations(int i) const { return obs_.at(i); }
  double reward_sum(int i) const { return sum_.at(i); }
  double index(int i) const { return index_.at(i); }
  double mean(int i) const { return sum_.at(i) / obs_.at(i); }
  double delta() const { return delta_; }
  double slack() const { return slack_; }

  // Argmax of the index; unobserved arms first, lowest arm index on ties.
  int select() const;
  void observe(int i, double reward);

 private:
  long long horizon_;
  double delta_;
  double slack_;
  double bonus_base_;  // 2 log n
  std::vector<long long> obs_;
  std::vector<double> sum_;
  std::vector<double> index_;
};

// One mesh-policy instance: select a vertex, learn from the reward on its
// whole observed set.
class MeshPolicy {
 public:
  virtual ~MeshPolicy() = default;
  virtual int select() = 0;
  // Returns the set of vertices updated this round (contains `arm`).
  virtual const std::vector<int>& update(int arm, double reward) = 0;
  virtual const Point& arm_point(int idx) const = 0;
  virtual int arm_count() const = 0;
  virtual const UcbState& state() const = 0;
};

// UniformMesh-N with exact neighborhoods N(v, 2*delta), precomputed per
// vertex by the brute-force oracle.
std::unique_ptr<MeshPolicy> make_uniform_mesh_n(
    std::shared_ptr<const DeltaNet> net, std::shared_ptr<const FiniteGroup> g,
    long long horizon, double delta);

// UniformMesh-N with tree-backed approximate neighborhoods; the locate
// slack is folded into the confidence bonus.
std::unique_ptr<MeshPolicy> make_uniform_mesh_n_tree(
    std::shared_ptr<const DeltaNet> net, std::shared_ptr<const FiniteGroup> g,
    std::shared_ptr<const CoverTree> tree, long long horizon, double delta);

// Symmetry-oblivious baseline: the observed set is the played vertex only.
std::unique_ptr<MeshPolicy> make_uniform_mesh(
    std::shared_ptr<const DeltaNet> net, long long horizon, double delta);

// UCB-N over an arbitrary undirected graph's closed neighborhoods.
std::unique_ptr<MeshPolicy> make_ucb_n(std::shared_ptr<const DeltaNet> net,
                                       std::shared_ptr<const OrbitGraph> graph,
                                       long long horizon, double delta);

// Finite warm-up: UCB1 over orbit representatives of a free permutation
// action on [K].
class InvariantUcb1 {
 public:
  // perm: the action of a generator set is not needed; pass every group
  // element as a permutation of {0..K-1}. Must act freely.
  InvariantUcb1(int num_arms, std::vector<std::vector<int>> elements,
                long long horizon);

  const std::vector<int>& representatives() const { return reps_; }
  int select();                      // arm index in [0, K)
  void update(int arm, double reward);

 private:
  int rep_slot(int arm) const;

  int num_arms_;
  std::vector<int> reps_;
  std::vector<int> rep_of_arm_;  // arm -> slot in reps_
  UcbState state_;
};

}  // namespace ilb
