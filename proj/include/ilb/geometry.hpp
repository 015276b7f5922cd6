#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "ilb/rng.hpp"

namespace ilb {

using Point = Eigen::VectorXd;

double distance(const Point& p, const Point& q);

// Axis-aligned box arm space, lower < upper componentwise.
class ArmSpace {
 public:
  ArmSpace(Point lower, Point upper);

  static ArmSpace unit_box(int dim);

  int dim() const { return static_cast<int>(lower_.size()); }
  const Point& lower() const { return lower_; }
  const Point& upper() const { return upper_; }

  bool contains(const Point& x, double tol = 1e-12) const;
  double volume() const;
  double diameter() const;
  Point center() const { return 0.5 * (lower_ + upper_); }
  Point sample(Rng& rng) const;
  // Distance from x to the nearest box face (negative outside).
  double face_distance(const Point& x) const;

 private:
  Point lower_;
  Point upper_;
};

// Uniform grid discretization at resolution delta: every point of the
// space lies within delta of some vertex.
struct DeltaNet {
  double delta = 0;
  ArmSpace space;
  std::vector<Point> vertices;
  double spacing = 0;  // realized per-axis cell bound, 2*delta/sqrt(d)

  int size() const { return static_cast<int>(vertices.size()); }
};

DeltaNet build_grid_net(const ArmSpace& space, double delta);

struct CoveringReport {
  double max_min_distance = 0;
  bool pass = true;
  int samples = 0;
};

CoveringReport covering_check(const DeltaNet& net, int samples, Rng& rng);

// Volume-ratio bracket for the delta-covering number of the space.
struct CoveringBounds {
  double lower = 0;
  double upper = 0;
};

CoveringBounds proposition1_bounds(const ArmSpace& space, double delta);

double unit_ball_volume(int dim);

}  // namespace ilb
