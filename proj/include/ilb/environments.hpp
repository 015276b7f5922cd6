#pragma once

#include <functional>
#include <memory>
#include <string>

#include "ilb/group.hpp"

namespace ilb {

enum class RewardNoise { bernoulli, truncated_gaussian };

// A bandit instance: mean reward function into [0,1], invariant under the
// attached group and 1-Lipschitz, with a certified optimum.
struct RewardInstance {
  std::function<double(const Point&)> mean;
  std::shared_ptr<const FiniteGroup> group;
  std::string descriptor;
  double optimum_value = 0;
  double certification_gap = 0;  // 0 for exact optima
  RewardNoise noise = RewardNoise::bernoulli;
};

// Points of the fundamental domain pairwise more than delta apart and more
// than delta from the domain boundary.
struct StrictPacking {
  std::vector<Point> points;
  double delta = 0;
};

StrictPacking strict_packing_of_domain(const FiniteGroup& g,
                                       const DirichletDomain& dom,
                                       double delta, Rng& rng,
                                       int budget = 20000);

RewardInstance make_constant_f0(std::shared_ptr<const FiniteGroup> group);

// Lower-bound ensemble member: 1/3 plus a tent of height delta/2 on the
// orbit of one packing point.
RewardInstance make_bump_instance(const StrictPacking& pack, int index,
                                  std::shared_ptr<const FiniteGroup> group);

// Group-averaged random mixture of radial bumps, affinely mapped into
// [0.1, 0.9]; optimum certified by grid refinement.
RewardInstance make_smooth_invariant_instance(
    std::shared_ptr<const FiniteGroup> group, Rng& rng, int bumps = 5,
    int grid_points_per_axis = 1000);

double sample_reward(const RewardInstance& env, const Point& x, Rng& rng);

struct InstanceReport {
  double max_lipschitz_ratio = 0;
  double max_invariance_residual = 0;
  double min_value = 1;
  double max_value = 0;
  bool lipschitz_ok = true;
  bool invariant_ok = true;
  bool range_ok = true;

  bool pass() const { return lipschitz_ok && invariant_ok && range_ok; }
};

InstanceReport verify_instance(const RewardInstance& env, int pairs,
                               int samples, Rng& rng);

}  // namespace ilb
