#include <doctest.h>

#include <cmath>

#include "ilb/group.hpp"

using namespace ilb;

namespace {

Point pt(std::initializer_list<double> xs) {
  Point p(static_cast<int>(xs.size()));
  int k = 0;
  for (const double x : xs) p[k++] = x;
  return p;
}

}  // namespace

TEST_CASE("coordinate swap acts as expected") {
  const FiniteGroup g = make_group("permutation", 2);
  REQUIRE(g.order() == 2);
  const Point x = pt({0.2, 0.7});
  const Point y = g.apply(1, x);
  CHECK(y[0] == doctest::Approx(0.7).epsilon(1e-15));
  CHECK(y[1] == doctest::Approx(0.2).epsilon(1e-15));
}

TEST_CASE("constructor orders and axioms") {
  CHECK(make_group("trivial", 3).order() == 1);
  CHECK(make_group("permutation", 3).order() == 6);
  CHECK(make_group("signflip", 2).order() == 4);
  CHECK(make_group("reflect1d", 1).order() == 2);
  CHECK(make_group("cyclic", 3).order() == 3);
  CHECK(make_group("dihedral1", 2).order() == 1);
  CHECK(make_group("dihedral2", 2).order() == 2);
  CHECK(make_group("dihedral4", 2).order() == 4);
  CHECK(make_group("dihedral8", 2).order() == 8);
  CHECK_THROWS_AS(make_group("no-such-group", 2), std::invalid_argument);

  Rng rng = make_rng(10);
  for (const char* kind : {"permutation", "signflip", "dihedral8", "cyclic"}) {
    const int d = std::string(kind)[0] == 'd' ? 2 : 3;
    const FiniteGroup g = make_group(kind, d);
    const auto report = verify_group(g.elements(), g.space(), 128, rng);
    CHECK_MESSAGE(report.pass(), kind);
  }
}

TEST_CASE("deleting an element breaks closure") {
  const FiniteGroup g = make_group("permutation", 3);
  std::vector<Isometry> partial(g.elements().begin(), g.elements().end() - 1);
  Rng rng = make_rng(11);
  const auto report = verify_group(partial, g.space(), 128, rng);
  CHECK_FALSE(report.closed);
  CHECK_THROWS(FiniteGroup::from_elements(partial, g.space()));
}

TEST_CASE("isometries preserve distances") {
  const FiniteGroup g = make_group("dihedral8", 2);
  Rng rng = make_rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const Point x = g.space().sample(rng);
    const Point y = g.space().sample(rng);
    for (int i = 0; i < g.order(); ++i) {
      CHECK(std::abs(distance(g.apply(i, x), g.apply(i, y)) - distance(x, y)) <=
            1e-9);
    }
  }
}

TEST_CASE("orbit and stabilizer of the cube diagonal under S_3") {
  const FiniteGroup g = make_group("permutation", 3);
  const Point diag = pt({0.3, 0.3, 0.3});
  CHECK(orbit(g, diag).size() == 1);
  CHECK(stabilizer(g, diag).size() == 6);

  const Point generic = pt({0.1, 0.5, 0.9});
  CHECK(orbit(g, generic).size() == 6);
  const auto stab = stabilizer(g, generic);
  REQUIRE(stab.size() == 1);
  CHECK(stab[0] == g.identity_index());
}

TEST_CASE("find_free_point avoids fixed sets") {
  SUBCASE("S_3 on the cube") {
    const FiniteGroup g = make_group("permutation", 3);
    Rng rng = make_rng(13);
    const Point x = find_free_point(g, rng);
    CHECK(stabilizer(g, x).size() == 1);
  }
  SUBCASE("reflection on [0,1] leaves the midpoint") {
    const FiniteGroup g = make_group("reflect1d", 1);
    Rng rng = make_rng(14);
    const Point x = find_free_point(g, rng, 1e-6);
    CHECK(std::abs(x[0] - 0.5) > 5e-6);
  }
  SUBCASE("trivial group accepts the first draw") {
    const FiniteGroup g = make_group("trivial", 2);
    Rng probe = make_rng(15);
    const Point expected = g.space().sample(probe);
    Rng rng = make_rng(15);
    const Point x = find_free_point(g, rng);
    CHECK((x - expected).norm() == 0.0);
  }
}

TEST_CASE("Dirichlet domain of the 1d reflection") {
  const FiniteGroup g = make_group("reflect1d", 1);
  const DirichletDomain dom = dirichlet_domain(g, pt({0.2}));
  REQUIRE(dom.halfspaces.size() == 1);
  CHECK(dom.halfspaces[0].second[0] == doctest::Approx(0.8).epsilon(1e-15));

  CHECK(domain_membership(dom, pt({0.1}), 1e-9) == Membership::interior);
  CHECK(domain_membership(dom, pt({0.5}), 1e-9) ==
        Membership::closure_boundary);
  CHECK(domain_membership(dom, pt({0.9}), 1e-9) == Membership::outside);

  const Canonical c = canonicalize(g, dom, pt({0.9}));
  CHECK(c.g_index != g.identity_index());
  CHECK(c.image[0] == doctest::Approx(0.1).epsilon(1e-12));

  SUBCASE("interior points canonicalize to themselves") {
    const Canonical id = canonicalize(g, dom, pt({0.3}));
    CHECK(id.g_index == g.identity_index());
    CHECK(id.image[0] == doctest::Approx(0.3).epsilon(1e-15));
  }
}

TEST_CASE("trivial group yields the whole space as domain") {
  const FiniteGroup g = make_group("trivial", 2);
  const DirichletDomain dom = dirichlet_domain(g, pt({0.4, 0.4}));
  CHECK(dom.halfspaces.empty());
  Rng rng = make_rng(16);
  for (int trial = 0; trial < 100; ++trial) {
    CHECK(domain_membership(dom, g.space().sample(rng), 1e-9) ==
          Membership::interior);
  }
}

TEST_CASE("S_2 swap domain is the x1 < x2 halfplane") {
  const FiniteGroup g = make_group("permutation", 2);
  const DirichletDomain dom = dirichlet_domain(g, pt({0.3, 0.6}));
  Rng rng = make_rng(17);
  for (int trial = 0; trial < 500; ++trial) {
    const Point x = g.space().sample(rng);
    const Membership m = domain_membership(dom, x, 1e-9);
    if (x[0] < x[1] - 1e-6) CHECK(m == Membership::interior);
    if (x[0] > x[1] + 1e-6) CHECK(m == Membership::outside);
  }
}

TEST_CASE("domain images tile the space") {
  // Prop 2 consequence: canonicalization lands every point in the closure,
  // and interior membership holds for at most one group image.
  for (const char* kind : {"dihedral8", "permutation"}) {
    const FiniteGroup g = make_group(kind, 2);
    Rng base_rng = make_rng(18);
    const Point base = find_free_point(g, base_rng);
    const DirichletDomain dom = dirichlet_domain(g, base);
    Rng rng = make_rng(19);
    for (int trial = 0; trial < 500; ++trial) {
      const Point x = g.space().sample(rng);
      const Canonical c = canonicalize(g, dom, x);
      CHECK(domain_membership(dom, c.image, 1e-5) != Membership::outside);
      CHECK((g.apply(c.g_index, x) - c.image).norm() <= 1e-12);
      int interior_images = 0;
      for (int i = 0; i < g.order(); ++i) {
        if (domain_membership(dom, g.apply(i, x), 1e-9) ==
            Membership::interior) {
          ++interior_images;
        }
      }
      CHECK(interior_images <= 1);
    }
  }
}

TEST_CASE("fixed base points are rejected") {
  const FiniteGroup g = make_group("reflect1d", 1);
  CHECK_THROWS_AS(dirichlet_domain(g, pt({0.5})), std::invalid_argument);
}

TEST_CASE("direct product multiplies orders") {
  const FiniteGroup a = make_group("reflect1d", 1);
  const FiniteGroup b = make_group("reflect1d", 1);
  const FiniteGroup prod = direct_product(a, b);
  CHECK(prod.order() == 4);
  CHECK(prod.dim() == 2);
  Rng rng = make_rng(20);
  CHECK(verify_group(prod.elements(), prod.space(), 128, rng).pass());
}

TEST_CASE("JSON round trip preserves the group") {
  const FiniteGroup g = make_group("dihedral8", 2);
  const FiniteGroup back = group_from_json(group_to_json(g));
  REQUIRE(back.order() == g.order());
  CHECK(back.dim() == g.dim());
  Rng rng = make_rng(21);
  for (int trial = 0; trial < 50; ++trial) {
    const Point x = g.space().sample(rng);
    for (int i = 0; i < g.order(); ++i) {
      // from_elements may reorder; match by image sets.
      double best = 1e100;
      for (int j = 0; j < back.order(); ++j) {
        best = std::min(best, (g.apply(i, x) - back.apply(j, x)).norm());
      }
      CHECK(best <= 1e-12);
    }
  }
}
