#pragma once

#include "ilb/group.hpp"

namespace ilb {

// Hierarchical box partition over a grid net. Each level splits every cell
// at the midpoint of its longest axis, so cell diameters shrink
// geometrically; leaves hold net vertex indices.
class CoverTree {
 public:
  struct Node {
    Point lower;
    Point upper;
    int level = 0;
    int left = -1;   // child node indices, -1 at leaves
    int right = -1;
    std::vector<int> vertex_ids;  // all net vertices inside this cell

    double diameter() const { return (upper - lower).norm(); }
  };

  CoverTree(const ArmSpace& space, const DeltaNet& net, double rho = 0.5);

  int depth() const { return depth_; }
  double rho() const { return rho_; }
  // Max realized cell diameter at a level; the locate() slack source.
  double level_diameter(int level) const { return level_diameter_.at(level); }
  const std::vector<Node>& nodes() const { return nodes_; }

  // Vertices of all depth-H' cells meeting the ball B(z, radius), where H'
  // is the first level with cell diameter <= 2*radius. Superset of the
  // exact ball query; excess is bounded by slack().
  std::vector<int> locate(const Point& z, double radius) const;

  // Additive radius slack of locate() at the given query radius.
  double slack(double radius) const { return level_diameter_[query_level(radius)]; }

  // Cells visited by the most recent locate() call on this thread; used by
  // complexity diagnostics only.
  mutable long long cells_visited = 0;

 private:
  int query_level(double radius) const;

  double rho_;
  int depth_ = 0;
  std::vector<Node> nodes_;
  std::vector<double> level_diameter_;
};

// Union over group elements of tree ball queries around the orbit of x.
std::vector<int> approx_neighborhood(const CoverTree& tree,
                                     const FiniteGroup& g, const Point& x,
                                     double eps);

}  // namespace ilb
