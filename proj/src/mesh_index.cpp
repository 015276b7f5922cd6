#include "ilb/mesh_index.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ilb {

namespace {

// Squared distance from z to an axis-aligned box.
double box_distance2(const Point& z, const Point& lower, const Point& upper) {
  double d2 = 0;
  for (int k = 0; k < z.size(); ++k) {
    const double gap = std::max({lower[k] - z[k], z[k] - upper[k], 0.0});
    d2 += gap * gap;
  }
  return d2;
}

}  // namespace

CoverTree::CoverTree(const ArmSpace& space, const DeltaNet& net, double rho)
    : rho_(rho) {
  if (!(rho > 0 && rho < 1)) {
    throw std::invalid_argument("CoverTree: rho must be in (0,1)");
  }
  // Depth H: smallest level with rho^H < 2*delta.
  depth_ = 0;
  while (std::pow(rho_, depth_) >= 2 * net.delta) ++depth_;

  Node root;
  root.lower = space.lower();
  root.upper = space.upper();
  root.level = 0;
  root.vertex_ids.resize(net.size());
  for (int v = 0; v < net.size(); ++v) root.vertex_ids[v] = v;
  nodes_.push_back(std::move(root));

  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    if (nodes_[i].level >= depth_) continue;
    const Point lower = nodes_[i].lower;
    const Point upper = nodes_[i].upper;
    int axis = 0;
    for (int k = 1; k < lower.size(); ++k) {
      if (upper[k] - lower[k] > upper[axis] - lower[axis]) axis = k;
    }
    const double mid = 0.5 * (lower[axis] + upper[axis]);

    Node left, right;
    left.lower = lower;
    left.upper = upper;
    left.upper[axis] = mid;
    right.lower = lower;
    right.lower[axis] = mid;
    right.upper = upper;
    left.level = right.level = nodes_[i].level + 1;
    for (const int v : nodes_[i].vertex_ids) {
      (net.vertices[v][axis] < mid ? left : right)
          .vertex_ids.push_back(v);
    }
    nodes_[i].left = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(left));
    nodes_[i].right = static_cast<int>(nodes_.size());
    nodes_.push_back(std::move(right));
  }

  level_diameter_.assign(depth_ + 1, 0.0);
  for (const Node& node : nodes_) {
    level_diameter_[node.level] =
        std::max(level_diameter_[node.level], node.diameter());
  }
}

int CoverTree::query_level(double radius) const {
  for (int h = 0; h <= depth_; ++h) {
    if (level_diameter_[h] <= 2 * radius) return h;
  }
  return depth_;
}

std::vector<int> CoverTree::locate(const Point& z, double radius) const {
  if (!(radius > 0)) {
    throw std::invalid_argument("CoverTree::locate: radius must be > 0");
  }
  const int target = query_level(radius);
  const double r2 = radius * radius;
  std::vector<int> out;
  std::vector<int> stack{0};
  cells_visited = 0;
  while (!stack.empty()) {
    const int i = stack.back();
    stack.pop_back();
    const Node& node = nodes_[i];
    ++cells_visited;
    if (box_distance2(z, node.lower, node.upper) > r2) continue;
    if (node.level == target || node.left < 0) {
      out.insert(out.end(), node.vertex_ids.begin(), node.vertex_ids.end());
      continue;
    }
    stack.push_back(node.left);
    stack.push_back(node.right);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<int> approx_neighborhood(const CoverTree& tree,
                                     const FiniteGroup& g, const Point& x,
                                     double eps) {
  std::vector<int> out;
  for (int i = 0; i < g.order(); ++i) {
    const auto part = tree.locate(g.apply(i, x), eps);
    out.insert(out.end(), part.begin(), part.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace ilb
