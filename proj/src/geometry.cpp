#include "ilb/geometry.hpp"

#include <cmath>
#include <limits>

namespace ilb {

double distance(const Point& p, const Point& q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("distance: dimension mismatch");
  }
  return (p - q).norm();
}

ArmSpace::ArmSpace(Point lower, Point upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() < 1) {
    throw std::invalid_argument("ArmSpace: bad bounds");
  }
  for (int k = 0; k < lower_.size(); ++k) {
    if (!(lower_[k] < upper_[k]) || !std::isfinite(lower_[k]) ||
        !std::isfinite(upper_[k])) {
      throw std::invalid_argument("ArmSpace: lower < upper required");
    }
  }
}

ArmSpace ArmSpace::unit_box(int dim) {
  return ArmSpace(Point::Zero(dim), Point::Ones(dim));
}

bool ArmSpace::contains(const Point& x, double tol) const {
  if (x.size() != lower_.size()) return false;
  for (int k = 0; k < x.size(); ++k) {
    if (x[k] < lower_[k] - tol || x[k] > upper_[k] + tol) return false;
  }
  return true;
}

double ArmSpace::volume() const {
  return (upper_ - lower_).prod();
}

double ArmSpace::diameter() const {
  return (upper_ - lower_).norm();
}

Point ArmSpace::sample(Rng& rng) const {
  Point x(lower_.size());
  for (int k = 0; k < x.size(); ++k) {
    x[k] = lower_[k] + (upper_[k] - lower_[k]) * uniform01(rng);
  }
  return x;
}

double ArmSpace::face_distance(const Point& x) const {
  double d = std::numeric_limits<double>::infinity();
  for (int k = 0; k < x.size(); ++k) {
    d = std::min(d, std::min(x[k] - lower_[k], upper_[k] - x[k]));
  }
  return d;
}

DeltaNet build_grid_net(const ArmSpace& space, double delta) {
  if (!(delta > 0)) {
    throw std::invalid_argument("build_grid_net: delta must be positive");
  }
  const int d = space.dim();
  // Cell half-diagonal equals delta when every cell width equals s.
  const double s = 2.0 * delta / std::sqrt(static_cast<double>(d));
  std::vector<int> counts(d);
  std::vector<double> widths(d);
  long long total = 1;
  for (int k = 0; k < d; ++k) {
    const double len = space.upper()[k] - space.lower()[k];
    counts[k] = std::max(1, static_cast<int>(std::ceil(len / s)));
    widths[k] = len / counts[k];
    total *= counts[k];
    if (total > 50'000'000) {
      throw std::invalid_argument("build_grid_net: grid too large");
    }
  }

  DeltaNet net{delta, space, {}, s};
  net.vertices.reserve(static_cast<std::size_t>(total));
  std::vector<int> idx(d, 0);
  while (true) {
    Point p(d);
    for (int k = 0; k < d; ++k) {
      p[k] = space.lower()[k] + (idx[k] + 0.5) * widths[k];
    }
    net.vertices.push_back(std::move(p));
    int k = d - 1;
    while (k >= 0 && ++idx[k] == counts[k]) {
      idx[k] = 0;
      --k;
    }
    if (k < 0) break;
  }
  if (net.vertices.empty()) {
    throw std::runtime_error("build_grid_net: degenerate net");
  }
  return net;
}

CoveringReport covering_check(const DeltaNet& net, int samples, Rng& rng) {
  if (samples < 0) {
    throw std::invalid_argument("covering_check: samples must be >= 0");
  }
  CoveringReport report;
  report.samples = samples;
  for (int s = 0; s < samples; ++s) {
    const Point x = net.space.sample(rng);
    double best = std::numeric_limits<double>::infinity();
    for (const Point& v : net.vertices) {
      best = std::min(best, (x - v).norm());
    }
    report.max_min_distance = std::max(report.max_min_distance, best);
  }
  report.pass = report.max_min_distance <= net.delta + 1e-12;
  return report;
}

double unit_ball_volume(int dim) {
  return std::pow(M_PI, dim / 2.0) / std::tgamma(dim / 2.0 + 1.0);
}

CoveringBounds proposition1_bounds(const ArmSpace& space, double delta) {
  if (!(delta > 0)) {
    throw std::invalid_argument("proposition1_bounds: delta must be positive");
  }
  const int d = space.dim();
  const double ratio = space.volume() / unit_ball_volume(d);
  return CoveringBounds{std::pow(1.0 / delta, d) * ratio,
                        std::pow(3.0 / delta, d) * ratio};
}

}  // namespace ilb
