#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ilb/geometry.hpp"

namespace ilb {

// Euclidean isometry x -> linear*x + translation with orthogonal linear part.
struct Isometry {
  Eigen::MatrixXd linear;
  Eigen::VectorXd translation;

  int dim() const { return static_cast<int>(translation.size()); }
  Point apply(const Point& x) const;
  Isometry compose(const Isometry& other) const;  // this after other
  static Isometry identity(int dim);
};

struct GroupVerifyReport {
  bool orthogonal = true;
  bool no_duplicates = true;
  bool has_identity = true;
  bool closed = true;
  bool has_inverses = true;
  bool preserves_space = true;
  double max_orthogonality_residual = 0;
  double max_space_violation = 0;
  std::string note;

  bool pass() const {
    return orthogonal && no_duplicates && has_identity && closed &&
           has_inverses && preserves_space;
  }
};

GroupVerifyReport verify_group(const std::vector<Isometry>& elements,
                               const ArmSpace& space, int probes, Rng& rng);

// Finite isometry group stored as an explicit element list with composition
// and inverse tables. Identity is always element 0.
class FiniteGroup {
 public:
  static FiniteGroup from_elements(std::vector<Isometry> elements,
                                   ArmSpace space);

  int order() const { return static_cast<int>(elements_.size()); }
  int dim() const { return space_.dim(); }
  const ArmSpace& space() const { return space_; }
  const Isometry& element(int i) const { return elements_.at(i); }
  const std::vector<Isometry>& elements() const { return elements_; }
  int identity_index() const { return identity_index_; }
  int inverse(int i) const { return inverse_table_.at(i); }
  int compose_index(int i, int j) const { return cayley_table_.at(i).at(j); }

  Point apply(int i, const Point& x) const { return elements_.at(i).apply(x); }

 private:
  FiniteGroup(std::vector<Isometry> elements, ArmSpace space);

  std::vector<Isometry> elements_;
  ArmSpace space_;
  int identity_index_ = 0;
  std::vector<int> inverse_table_;
  std::vector<std::vector<int>> cayley_table_;
};

// Named constructors acting on the unit box [0,1]^d.
//   trivial      any d
//   permutation  coordinate permutations, |G| = d!
//   signflip     reflections about the box center, |G| = 2^d
//   reflect1d    d = 1, {id, x -> 1-x}
//   cyclic       cyclic coordinate shifts, |G| = d
//   dihedral1/2/4/8   d = 2, subgroup chain of the square's symmetries
FiniteGroup make_group(const std::string& kind, int d);

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b);

std::vector<Point> orbit(const FiniteGroup& g, const Point& x,
                         double tol = 1e-9);
std::vector<int> stabilizer(const FiniteGroup& g, const Point& x,
                            double tol = 1e-9);

Point find_free_point(const FiniteGroup& g, Rng& rng, double tol = 1e-6,
                      int max_tries = 10000);

// Dirichlet fundamental domain: points strictly closer to the base point
// than to any of its non-identity images.
struct DirichletDomain {
  Point base_point;
  std::vector<std::pair<int, Point>> halfspaces;  // (g index, g * base)
  ArmSpace space;
};

DirichletDomain dirichlet_domain(const FiniteGroup& g, const Point& base,
                                 double tol = 1e-6);

enum class Membership { interior, closure_boundary, outside };

Membership domain_membership(const DirichletDomain& dom, const Point& x,
                             double tol);

struct Canonical {
  int g_index = 0;
  Point image;
};

// Maps x into the closure of the domain; lowest group index wins ties.
Canonical canonicalize(const FiniteGroup& g, const DirichletDomain& dom,
                       const Point& x);

std::string group_to_json(const FiniteGroup& g);
FiniteGroup group_from_json(const std::string& text);

}  // namespace ilb
