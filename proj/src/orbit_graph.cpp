#include "ilb/orbit_graph.hpp"

#include <algorithm>
#include <stdexcept>

namespace ilb {

std::vector<int> OrbitGraph::neighbors(int u) const {
  std::vector<int> out;
  for (int v = 0; v < vertex_count; ++v) {
    if (adjacency[u][v]) out.push_back(v);
  }
  return out;
}

OrbitGraph build_graph(const DeltaNet& net, const FiniteGroup& g, double eps) {
  if (!(eps > 0)) throw std::invalid_argument("build_graph: eps must be > 0");
  const int n = net.size();
  OrbitGraph graph{eps, n, std::vector<std::vector<bool>>(
                               n, std::vector<bool>(n, false))};
  // Images of every vertex under every group element, then strict
  // proximity. Group closure under inverses makes the relation symmetric;
  // enforce it structurally anyway.
  std::vector<std::vector<Point>> images(n);
  for (int u = 0; u < n; ++u) {
    images[u].reserve(g.order());
    for (int i = 0; i < g.order(); ++i) {
      images[u].push_back(g.apply(i, net.vertices[u]));
    }
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u; v < n; ++v) {
      bool hit = false;
      for (const Point& gu : images[u]) {
        if ((gu - net.vertices[v]).norm() < eps) {
          hit = true;
          break;
        }
      }
      graph.adjacency[u][v] = hit;
      graph.adjacency[v][u] = hit;
    }
  }
  return graph;
}

std::vector<int> neighborhood_of_orbit(const FiniteGroup& g,
                                       const DeltaNet& net, const Point& x,
                                       double eps) {
  if (!(eps > 0)) {
    throw std::invalid_argument("neighborhood_of_orbit: eps must be > 0");
  }
  std::vector<Point> images;
  images.reserve(g.order());
  for (int i = 0; i < g.order(); ++i) images.push_back(g.apply(i, x));
  std::vector<int> out;
  for (int v = 0; v < net.size(); ++v) {
    for (const Point& gx : images) {
      if ((gx - net.vertices[v]).norm() <= eps) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

std::vector<int> vertices_covering_closure(const DeltaNet& net,
                                           const FiniteGroup& g,
                                           const DirichletDomain& dom,
                                           Rng& rng) {
  const int n = net.size();
  const int sample_count = 100 * n;
  std::vector<Point> samples;
  samples.reserve(sample_count);
  for (int s = 0; s < sample_count; ++s) {
    samples.push_back(canonicalize(g, dom, net.space.sample(rng)).image);
  }
  std::vector<bool> covered(samples.size(), false);
  std::vector<int> kept;
  for (int v = 0; v < n; ++v) {
    bool useful = false;
    for (std::size_t s = 0; s < samples.size(); ++s) {
      if (!covered[s] &&
          (samples[s] - net.vertices[v]).norm() <= net.delta) {
        covered[s] = true;
        useful = true;
      }
    }
    if (useful) kept.push_back(v);
  }
  if (kept.empty()) {
    throw std::runtime_error(
        "vertices_covering_closure: no vertex covers the domain");
  }
  return kept;
}

CliqueCover clique_cover(const DeltaNet& net, const FiniteGroup& g,
                         const DirichletDomain& dom, double delta, Rng& rng) {
  const int n = net.size();
  const auto domain_vertices = vertices_covering_closure(net, g, dom, rng);
  CliqueCover cover;
  cover.owner.assign(n, -1);
  for (const int i : domain_vertices) {
    std::vector<int> clique;
    for (const int v :
         neighborhood_of_orbit(g, net, net.vertices[i], delta)) {
      if (cover.owner[v] < 0) {
        cover.owner[v] = cover.size();
        clique.push_back(v);
      }
    }
    if (!clique.empty()) cover.cliques.push_back(std::move(clique));
  }
  // Floating-point boundary effects can orphan vertices; keep the
  // partition exact with singletons.
  for (int v = 0; v < n; ++v) {
    if (cover.owner[v] < 0) {
      cover.owner[v] = cover.size();
      cover.cliques.push_back({v});
    }
  }

  const OrbitGraph graph = build_graph(net, g, 2 * delta);
  for (const auto& clique : cover.cliques) {
    for (std::size_t a = 0; a < clique.size(); ++a) {
      for (std::size_t b = a + 1; b < clique.size(); ++b) {
        if (!graph.edge(clique[a], clique[b])) {
          throw std::runtime_error(
              "clique_cover: emitted clique not complete in G_2delta");
        }
      }
    }
  }
  return cover;
}

}  // namespace ilb
