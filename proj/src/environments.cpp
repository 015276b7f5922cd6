#include "ilb/environments.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace ilb {

namespace {

// Signed distance from x to the domain boundary: the exact distance to
// each perpendicular bisector, plus the box faces. Negative outside.
double boundary_distance_estimate(const DirichletDomain& dom, const Point& x) {
  const double d0 = (x - dom.base_point).squaredNorm();
  double est = dom.space.face_distance(x);
  for (const auto& [g_idx, image] : dom.halfspaces) {
    const double gap = (image - dom.base_point).norm();
    est = std::min(est, ((x - image).squaredNorm() - d0) / (2.0 * gap));
  }
  return est;
}

}  // namespace

StrictPacking strict_packing_of_domain(const FiniteGroup& g,
                                       const DirichletDomain& dom,
                                       double delta, Rng& rng, int budget) {
  if (!(delta > 0)) {
    throw std::invalid_argument("strict_packing_of_domain: delta must be > 0");
  }
  StrictPacking pack;
  pack.delta = delta;
  int failures = 0;
  while (failures < budget) {
    const Point x = dom.space.sample(rng);
    if (boundary_distance_estimate(dom, x) <= delta) {
      ++failures;
      continue;
    }
    // Also keep each point delta-separated from its own orbit, so that
    // orbit balls of radius delta/2 never collide.
    bool ok = true;
    for (int i = 1; i < g.order(); ++i) {
      if ((g.apply(i, x) - x).norm() <= delta) {
        ok = false;
        break;
      }
    }
    if (!ok) {
      ++failures;
      continue;
    }
    for (const Point& p : pack.points) {
      if ((p - x).norm() <= delta) {
        ok = false;
        break;
      }
    }
    if (ok) {
      pack.points.push_back(x);
      failures = 0;
    } else {
      ++failures;
    }
  }
  if (pack.points.empty()) {
    std::ostringstream oss;
    oss << "strict_packing_of_domain: delta " << delta
        << " admits no interior point";
    throw std::runtime_error(oss.str());
  }
  return pack;
}

RewardInstance make_constant_f0(std::shared_ptr<const FiniteGroup> group) {
  RewardInstance env;
  env.mean = [](const Point&) { return 1.0 / 3.0; };
  env.group = std::move(group);
  env.descriptor = "constant(1/3)";
  env.optimum_value = 1.0 / 3.0;
  return env;
}

RewardInstance make_bump_instance(const StrictPacking& pack, int index,
                                  std::shared_ptr<const FiniteGroup> group) {
  if (index < 0 || index >= static_cast<int>(pack.points.size())) {
    throw std::invalid_argument("make_bump_instance: index out of range");
  }
  const double delta = pack.delta;
  if (!(delta > 0 && delta < 2.0 / 3.0)) {
    throw std::invalid_argument("make_bump_instance: delta must be in (0,2/3)");
  }
  const Point center = pack.points[index];
  std::vector<Point> images;
  for (int i = 0; i < group->order(); ++i) {
    const Point y = group->apply(i, center);
    bool dup = false;
    for (const Point& p : images) {
      if ((p - y).norm() <= 1e-12) {
        dup = true;
        break;
      }
    }
    if (!dup) images.push_back(y);
  }
  for (std::size_t a = 0; a < images.size(); ++a) {
    for (std::size_t b = a + 1; b < images.size(); ++b) {
      if ((images[a] - images[b]).norm() < delta - 1e-12) {
        throw std::runtime_error(
            "make_bump_instance: orbit balls overlap, packing violated");
      }
    }
  }

  RewardInstance env;
  env.group = std::move(group);
  env.mean = [images, delta](const Point& x) {
    for (const Point& y : images) {
      const double d = (y - x).norm();
      if (d < delta / 2.0) return 1.0 / 3.0 + delta / 2.0 - d;
    }
    return 1.0 / 3.0;
  };
  std::ostringstream oss;
  oss << "bump(index=" << index << ",delta=" << delta << ")";
  env.descriptor = oss.str();
  env.optimum_value = 1.0 / 3.0 + delta / 2.0;
  return env;
}

RewardInstance make_smooth_invariant_instance(
    std::shared_ptr<const FiniteGroup> group, Rng& rng, int bumps,
    int grid_points_per_axis) {
  const ArmSpace& space = group->space();
  const int d = space.dim();
  const double diam = space.diameter();

  // Tent bumps replicated over the whole orbit of each center. The max of
  // 1-Lipschitz tents is 1-Lipschitz, and a max over an orbit-closed set
  // is exactly invariant, so no group averaging (which flattens the
  // landscape) is needed. amp <= radius keeps every slope at most 1.
  std::vector<Point> centers;
  std::vector<double> radii, amps;
  for (int j = 0; j < bumps; ++j) {
    const Point c = space.sample(rng);
    const double radius = (0.2 + 0.3 * uniform01(rng)) * diam;
    const double amp = std::min(1.0, radius) * (0.4 + 0.6 * uniform01(rng));
    for (int i = 0; i < group->order(); ++i) {
      centers.push_back(group->apply(i, c));
      radii.push_back(radius);
      amps.push_back(amp);
    }
  }

  const auto mean = [=](const Point& x) {
    double v = 0;
    for (std::size_t j = 0; j < centers.size(); ++j) {
      v = std::max(
          v, amps[j] * std::max(0.0, 1.0 - (x - centers[j]).norm() / radii[j]));
    }
    return 0.1 + 0.8 * v;
  };

  // Certify the optimum on a dense grid; the Lipschitz bound converts grid
  // resolution into a value gap.
  std::vector<int> counts(d, grid_points_per_axis);
  double widths2 = 0;
  for (int k = 0; k < d; ++k) {
    const double w = (space.upper()[k] - space.lower()[k]) / counts[k];
    widths2 += w * w;
  }
  const double cell_half_diag = 0.5 * std::sqrt(widths2);
  double best = -std::numeric_limits<double>::infinity();
  std::vector<int> idx(d, 0);
  while (true) {
    Point p(d);
    for (int k = 0; k < d; ++k) {
      p[k] = space.lower()[k] +
             (idx[k] + 0.5) * (space.upper()[k] - space.lower()[k]) / counts[k];
    }
    best = std::max(best, mean(p));
    int k = d - 1;
    while (k >= 0 && ++idx[k] == counts[k]) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }

  RewardInstance env;
  env.mean = mean;
  env.group = std::move(group);
  env.certification_gap = 0.8 * cell_half_diag;
  env.optimum_value = best + env.certification_gap;
  std::ostringstream oss;
  oss << "smooth(bumps=" << bumps << ")";
  env.descriptor = oss.str();
  return env;
}

double sample_reward(const RewardInstance& env, const Point& x, Rng& rng) {
  const double m = env.mean(x);
  if (env.noise == RewardNoise::bernoulli) {
    return uniform01(rng) < m ? 1.0 : 0.0;
  }
  // Box-Muller; keeps the stream portable across standard libraries.
  const double u1 = std::max(uniform01(rng), 1e-300);
  const double u2 = uniform01(rng);
  const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  return std::clamp(m + 0.1 * z, 0.0, 1.0);
}

InstanceReport verify_instance(const RewardInstance& env, int pairs,
                               int samples, Rng& rng) {
  InstanceReport report;
  const ArmSpace& space = env.group->space();
  for (int s = 0; s < pairs; ++s) {
    const Point x = space.sample(rng);
    const Point y = space.sample(rng);
    const double dist = (x - y).norm();
    if (dist < 1e-12) continue;
    report.max_lipschitz_ratio = std::max(
        report.max_lipschitz_ratio, std::abs(env.mean(x) - env.mean(y)) / dist);
  }
  for (int s = 0; s < samples; ++s) {
    const Point x = space.sample(rng);
    const double fx = env.mean(x);
    report.min_value = std::min(report.min_value, fx);
    report.max_value = std::max(report.max_value, fx);
    for (int i = 0; i < env.group->order(); ++i) {
      report.max_invariance_residual =
          std::max(report.max_invariance_residual,
                   std::abs(env.mean(env.group->apply(i, x)) - fx));
    }
  }
  report.lipschitz_ok = report.max_lipschitz_ratio <= 1.0 + 1e-6;
  report.invariant_ok = report.max_invariance_residual <= 1e-9;
  report.range_ok = report.min_value >= -1e-12 && report.max_value <= 1 + 1e-12;
  return report;
}

}  // namespace ilb
