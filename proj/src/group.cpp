#include "ilb/group.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ilb {

namespace {

constexpr double kMapEqTol = 1e-8;

// d+1 affinely independent probe points inside the box; two affine maps
// agreeing on all of them are equal.
std::vector<Point> probe_points(const ArmSpace& space) {
  const int d = space.dim();
  const Point len = space.upper() - space.lower();
  Point base = space.lower() + 0.37 * len;
  std::vector<Point> probes;
  probes.push_back(base);
  for (int k = 0; k < d; ++k) {
    Point p = base;
    p[k] += 0.29 * len[k];
    probes.push_back(std::move(p));
  }
  return probes;
}

double map_distance(const Isometry& a, const Isometry& b,
                    const std::vector<Point>& probes) {
  double worst = 0;
  for (const Point& p : probes) {
    worst = std::max(worst, (a.apply(p) - b.apply(p)).norm());
  }
  return worst;
}

int find_element(const std::vector<Isometry>& elements, const Isometry& m,
                 const std::vector<Point>& probes) {
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (map_distance(elements[i], m, probes) <= kMapEqTol) {
      return static_cast<int>(i);
    }
  }
  return -1;
}

std::vector<std::vector<int>> all_permutations(int d) {
  std::vector<int> perm(d);
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::vector<int>> out;
  do {
    out.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return out;
}

Isometry from_linear_about_center(const Eigen::MatrixXd& linear,
                                  const Point& center) {
  return Isometry{linear, center - linear * center};
}

}  // namespace

Point Isometry::apply(const Point& x) const {
  if (x.size() != translation.size()) {
    throw std::invalid_argument("Isometry::apply: dimension mismatch");
  }
  return linear * x + translation;
}

Isometry Isometry::compose(const Isometry& other) const {
  return Isometry{linear * other.linear,
                  linear * other.translation + translation};
}

Isometry Isometry::identity(int dim) {
  return Isometry{Eigen::MatrixXd::Identity(dim, dim),
                  Eigen::VectorXd::Zero(dim)};
}

GroupVerifyReport verify_group(const std::vector<Isometry>& elements,
                               const ArmSpace& space, int probes, Rng& rng) {
  GroupVerifyReport report;
  if (elements.empty()) {
    report.has_identity = false;
    report.note = "empty element list";
    return report;
  }
  const int d = space.dim();
  const auto probe_set = probe_points(space);

  for (const Isometry& g : elements) {
    const double resid =
        (g.linear.transpose() * g.linear - Eigen::MatrixXd::Identity(d, d))
            .cwiseAbs()
            .maxCoeff();
    report.max_orthogonality_residual =
        std::max(report.max_orthogonality_residual, resid);
  }
  report.orthogonal = report.max_orthogonality_residual <= 1e-9;

  const Isometry id = Isometry::identity(d);
  report.has_identity = find_element(elements, id, probe_set) >= 0;

  for (std::size_t i = 0; i < elements.size() && report.no_duplicates; ++i) {
    for (std::size_t j = i + 1; j < elements.size(); ++j) {
      if (map_distance(elements[i], elements[j], probe_set) <= kMapEqTol) {
        report.no_duplicates = false;
        break;
      }
    }
  }

  for (std::size_t i = 0; i < elements.size() && report.closed; ++i) {
    bool has_inverse = false;
    for (std::size_t j = 0; j < elements.size(); ++j) {
      const Isometry comp = elements[i].compose(elements[j]);
      if (find_element(elements, comp, probe_set) < 0) {
        report.closed = false;
        break;
      }
      if (map_distance(comp, id, probe_set) <= kMapEqTol) has_inverse = true;
    }
    if (report.closed && !has_inverse) report.has_inverses = false;
  }

  for (int s = 0; s < probes; ++s) {
    const Point x = space.sample(rng);
    for (const Isometry& g : elements) {
      const Point y = g.apply(x);
      for (int k = 0; k < d; ++k) {
        const double excess = std::max(space.lower()[k] - y[k],
                                       y[k] - space.upper()[k]);
        report.max_space_violation =
            std::max(report.max_space_violation, excess);
      }
    }
  }
  report.preserves_space = report.max_space_violation <= 1e-8;
  return report;
}

FiniteGroup::FiniteGroup(std::vector<Isometry> elements, ArmSpace space)
    : elements_(std::move(elements)), space_(std::move(space)) {}

FiniteGroup FiniteGroup::from_elements(std::vector<Isometry> elements,
                                       ArmSpace space) {
  const auto probes = probe_points(space);
  const Isometry id = Isometry::identity(space.dim());
  const int id_idx = find_element(elements, id, probes);
  if (id_idx < 0) {
    throw std::invalid_argument("FiniteGroup: identity missing");
  }
  // Keep identity at index 0 so index tie-breaks prefer it.
  std::swap(elements[0], elements[id_idx]);

  FiniteGroup g(std::move(elements), std::move(space));
  g.identity_index_ = 0;
  const int n = g.order();
  g.cayley_table_.assign(n, std::vector<int>(n, -1));
  g.inverse_table_.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Isometry comp = g.elements_[i].compose(g.elements_[j]);
      const int k = find_element(g.elements_, comp, probes);
      if (k < 0) {
        throw std::invalid_argument("FiniteGroup: not closed");
      }
      g.cayley_table_[i][j] = k;
      if (k == 0) g.inverse_table_[i] = j;
    }
    if (g.inverse_table_[i] < 0) {
      throw std::invalid_argument("FiniteGroup: missing inverse");
    }
  }
  return g;
}

FiniteGroup make_group(const std::string& kind, int d) {
  if (d < 1) throw std::invalid_argument("make_group: d must be >= 1");
  const ArmSpace box = ArmSpace::unit_box(d);
  const Point center = box.center();
  std::vector<Isometry> elements;

  if (kind == "trivial" || kind == "dihedral1") {
    if (kind == "dihedral1" && d != 2) {
      throw std::invalid_argument("make_group: dihedral needs d = 2");
    }
    elements.push_back(Isometry::identity(d));
  } else if (kind == "permutation") {
    for (const auto& perm : all_permutations(d)) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
      for (int k = 0; k < d; ++k) m(perm[k], k) = 1.0;
      elements.push_back(Isometry{m, Eigen::VectorXd::Zero(d)});
    }
  } else if (kind == "signflip") {
    for (int mask = 0; mask < (1 << d); ++mask) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(d, d);
      for (int k = 0; k < d; ++k) {
        if (mask & (1 << k)) m(k, k) = -1.0;
      }
      elements.push_back(from_linear_about_center(m, center));
    }
  } else if (kind == "reflect1d") {
    if (d != 1) throw std::invalid_argument("make_group: reflect1d needs d = 1");
    elements.push_back(Isometry::identity(1));
    Eigen::MatrixXd m(1, 1);
    m(0, 0) = -1.0;
    elements.push_back(from_linear_about_center(m, center));
  } else if (kind == "cyclic") {
    std::vector<int> shift(d);
    for (int r = 0; r < d; ++r) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
      for (int k = 0; k < d; ++k) m((k + r) % d, k) = 1.0;
      elements.push_back(Isometry{m, Eigen::VectorXd::Zero(d)});
    }
  } else if (kind == "dihedral2" || kind == "dihedral4" || kind == "dihedral8") {
    if (d != 2) throw std::invalid_argument("make_group: dihedral needs d = 2");
    const int rotations = kind == "dihedral2" ? 2 : 4;
    for (int r = 0; r < rotations; ++r) {
      const double a = r * (2.0 * M_PI / 4.0) * (rotations == 2 ? 2.0 : 1.0);
      Eigen::MatrixXd m(2, 2);
      m << std::cos(a), -std::sin(a), std::sin(a), std::cos(a);
      elements.push_back(from_linear_about_center(m, center));
    }
    if (kind == "dihedral8") {
      for (int r = 0; r < 4; ++r) {
        const double a = r * (2.0 * M_PI / 4.0);
        Eigen::MatrixXd m(2, 2);
        // reflection across the axis at angle a/2
        m << std::cos(a), std::sin(a), std::sin(a), -std::cos(a);
        elements.push_back(from_linear_about_center(m, center));
      }
    }
  } else {
    throw std::invalid_argument("make_group: unknown kind '" + kind + "'");
  }

  Rng rng = make_rng(0xA5A5A5A5ULL);
  const auto report = verify_group(elements, box, 64, rng);
  if (!report.pass()) {
    throw std::runtime_error("make_group: verification failed for '" + kind +
                             "': " + report.note);
  }
  return FiniteGroup::from_elements(std::move(elements), box);
}

FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b) {
  const int da = a.dim();
  const int db = b.dim();
  const int d = da + db;
  Point lower(d), upper(d);
  lower << a.space().lower(), b.space().lower();
  upper << a.space().upper(), b.space().upper();
  std::vector<Isometry> elements;
  elements.reserve(static_cast<std::size_t>(a.order()) * b.order());
  for (int i = 0; i < a.order(); ++i) {
    for (int j = 0; j < b.order(); ++j) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d, d);
      m.topLeftCorner(da, da) = a.element(i).linear;
      m.bottomRightCorner(db, db) = b.element(j).linear;
      Eigen::VectorXd t(d);
      t << a.element(i).translation, b.element(j).translation;
      elements.push_back(Isometry{std::move(m), std::move(t)});
    }
  }
  return FiniteGroup::from_elements(std::move(elements),
                                    ArmSpace(lower, upper));
}

std::vector<Point> orbit(const FiniteGroup& g, const Point& x, double tol) {
  std::vector<Point> points;
  for (int i = 0; i < g.order(); ++i) {
    const Point y = g.apply(i, x);
    bool dup = false;
    for (const Point& p : points) {
      if ((p - y).norm() <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) points.push_back(y);
  }
  if (g.order() % static_cast<int>(points.size()) != 0) {
    throw std::runtime_error("orbit: size does not divide group order");
  }
  return points;
}

std::vector<int> stabilizer(const FiniteGroup& g, const Point& x, double tol) {
  std::vector<int> idx;
  for (int i = 0; i < g.order(); ++i) {
    if ((g.apply(i, x) - x).norm() <= tol) idx.push_back(i);
  }
  return idx;
}

Point find_free_point(const FiniteGroup& g, Rng& rng, double tol,
                      int max_tries) {
  double best_sep = -1;
  Point best;
  for (int t = 0; t < max_tries; ++t) {
    const Point x = g.space().sample(rng);
    double min_sep = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.order(); ++i) {
      if (i == g.identity_index()) continue;
      min_sep = std::min(min_sep, (g.apply(i, x) - x).norm());
    }
    for (int i = 1; i < g.order(); ++i) {
      for (int j = 0; j < i; ++j) {
        min_sep =
            std::min(min_sep, (g.apply(i, x) - g.apply(j, x)).norm());
      }
    }
    if (g.order() == 1 || min_sep > 10 * tol) return x;
    if (min_sep > best_sep) {
      best_sep = min_sep;
      best = x;
    }
  }
  std::ostringstream oss;
  oss << "find_free_point: exhausted " << max_tries
      << " tries; nearest miss separation " << best_sep;
  throw std::runtime_error(oss.str());
}

DirichletDomain dirichlet_domain(const FiniteGroup& g, const Point& base,
                                 double tol) {
  const auto stab = stabilizer(g, base, tol);
  if (stab.size() != 1) {
    throw std::invalid_argument(
        "dirichlet_domain: base point has non-trivial stabilizer");
  }
  DirichletDomain dom{base, {}, g.space()};
  for (int i = 0; i < g.order(); ++i) {
    if (i == g.identity_index()) continue;
    dom.halfspaces.emplace_back(i, g.apply(i, base));
  }
  return dom;
}

Membership domain_membership(const DirichletDomain& dom, const Point& x,
                             double tol) {
  const double d0 = (x - dom.base_point).norm();
  bool boundary = false;
  for (const auto& [g_idx, image] : dom.halfspaces) {
    const double dg = (x - image).norm();
    if (d0 > dg + tol) return Membership::outside;
    if (d0 >= dg - tol) boundary = true;
  }
  return boundary ? Membership::closure_boundary : Membership::interior;
}

Canonical canonicalize(const FiniteGroup& g, const DirichletDomain& dom,
                       const Point& x) {
  const double diam = dom.space.diameter();
  for (const double scale : {1e-9, 1e-7, 1e-5}) {
    const double tol = scale * diam;
    for (int i = 0; i < g.order(); ++i) {
      const Point y = g.apply(i, x);
      if (domain_membership(dom, y, tol) != Membership::outside) {
        return Canonical{i, y};
      }
    }
  }
  throw std::runtime_error(
      "canonicalize: no group image lands in the domain closure");
}

std::string group_to_json(const FiniteGroup& g) {
  nlohmann::json j;
  j["dim"] = g.dim();
  j["lower"] = std::vector<double>(g.space().lower().begin(),
                                   g.space().lower().end());
  j["upper"] = std::vector<double>(g.space().upper().begin(),
                                   g.space().upper().end());
  auto& elems = j["elements"] = nlohmann::json::array();
  for (const Isometry& e : g.elements()) {
    nlohmann::json je;
    std::vector<double> rowmajor;
    for (int r = 0; r < e.linear.rows(); ++r) {
      for (int c = 0; c < e.linear.cols(); ++c) {
        rowmajor.push_back(e.linear(r, c));
      }
    }
    je["linear"] = rowmajor;
    je["translation"] =
        std::vector<double>(e.translation.begin(), e.translation.end());
    elems.push_back(std::move(je));
  }
  return j.dump(2);
}

FiniteGroup group_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  const int d = j.at("dim").get<int>();
  Point lower(d), upper(d);
  for (int k = 0; k < d; ++k) {
    lower[k] = j.at("lower").at(k).get<double>();
    upper[k] = j.at("upper").at(k).get<double>();
  }
  std::vector<Isometry> elements;
  for (const auto& je : j.at("elements")) {
    Eigen::MatrixXd m(d, d);
    for (int r = 0; r < d; ++r) {
      for (int c = 0; c < d; ++c) {
        m(r, c) = je.at("linear").at(r * d + c).get<double>();
      }
    }
    Eigen::VectorXd t(d);
    for (int k = 0; k < d; ++k) t[k] = je.at("translation").at(k).get<double>();
    elements.push_back(Isometry{std::move(m), std::move(t)});
  }
  return FiniteGroup::from_elements(std::move(elements),
                                    ArmSpace(lower, upper));
}

}  // namespace ilb
