#pragma once

#include "ilb/group.hpp"

namespace ilb {

// Feedback graph on net vertices: (u,v) is an edge when some group element
// carries u strictly within epsilon of v. Self-loops are present (g = id).
struct OrbitGraph {
  double epsilon = 0;
  int vertex_count = 0;
  std::vector<std::vector<bool>> adjacency;

  bool edge(int u, int v) const { return adjacency[u][v]; }
  std::vector<int> neighbors(int u) const;  // ascending, includes u
};

OrbitGraph build_graph(const DeltaNet& net, const FiniteGroup& g, double eps);

// N(x, eps): net vertices within eps (inclusive) of some orbit point of x.
// Brute force over group elements and vertices; the reference oracle.
std::vector<int> neighborhood_of_orbit(const FiniteGroup& g,
                                       const DeltaNet& net, const Point& x,
                                       double eps);

// Greedy subset of net vertices whose delta-balls cover sampled points of
// the closed fundamental domain.
std::vector<int> vertices_covering_closure(const DeltaNet& net,
                                           const FiniteGroup& g,
                                           const DirichletDomain& dom,
                                           Rng& rng);

struct CliqueCover {
  std::vector<std::vector<int>> cliques;
  std::vector<int> owner;  // clique index per vertex

  int size() const { return static_cast<int>(cliques.size()); }
};

// Partition of the vertices into cliques of G_{2 delta}, one per covering
// vertex of the domain closure plus singletons for orphaned vertices.
CliqueCover clique_cover(const DeltaNet& net, const FiniteGroup& g,
                         const DirichletDomain& dom, double delta, Rng& rng);

}  // namespace ilb
