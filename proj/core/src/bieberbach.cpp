#include "flatspec/bieberbach.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <mutex>

#include "flatspec/family.hpp"

namespace flatspec {

namespace {

void check_square(const RatMatrix& basis) {
  if (basis.rows() == 0 || basis.rows() != basis.cols())
    throw GroupError(ViolationKind::Malformed, "lattice basis must be a nonempty square matrix");
  if (determinant(basis) == 0) throw GroupError(ViolationKind::Malformed, "lattice basis is singular");
}

AffineElement normalized(AffineElement e) {
  e.translation = reduce_mod_one(e.translation);
  return e;
}

std::string describe(const AffineElement& e) {
  std::string s = "B=[";
  for (int i = 0; i < e.rotation.rows(); ++i) {
    if (i) s += ";";
    for (int j = 0; j < e.rotation.cols(); ++j) {
      if (j) s += ",";
      s += std::to_string(e.rotation(i, j));
    }
  }
  s += "] a=(";
  for (std::size_t i = 0; i < e.translation.size(); ++i) {
    if (i) s += ",";
    s += to_string(e.translation[i]);
  }
  return s + ")";
}

}  // namespace

RatVector affine_translation(const IntMatrix& rotation, const RatVector& b) { return to_rational(rotation).apply(b); }

RatVector rotated_translation(const IntMatrix& rotation, const RatVector& a) { return solve(to_rational(rotation), a); }

AffineElement compose(const AffineElement& g, const AffineElement& h) {
  RatVector t = to_rational(g.rotation).apply(h.translation);
  for (std::size_t i = 0; i < t.size(); ++i) t[i] += g.translation[i];
  return {g.rotation * h.rotation, reduce_mod_one(t)};
}

BieberbachGroup::BieberbachGroup(std::string name, RatMatrix basis, std::vector<AffineElement> elements)
    : name_(std::move(name)), basis_(std::move(basis)), elements_(std::move(elements)) {
  check_square(basis_);
  for (auto& e : elements_) {
    if (e.rotation.rows() != n() || e.rotation.cols() != n() || static_cast<int>(e.translation.size()) != n())
      throw GroupError(ViolationKind::Malformed, "element dimensions do not match the lattice");
    e = normalized(std::move(e));
  }
  gram_ = basis_.transpose() * basis_;
}

BieberbachGroup BieberbachGroup::from_generators(std::string name, RatMatrix basis,
                                                 const std::vector<AffineElement>& generators,
                                                 std::size_t max_elements) {
  check_square(basis);
  const int n = basis.rows();
  AffineElement id{IntMatrix::identity(n), RatVector(static_cast<std::size_t>(n), 0)};
  std::vector<AffineElement> gens;
  for (const auto& g : generators) {
    if (g.rotation.rows() != n || g.rotation.cols() != n || static_cast<int>(g.translation.size()) != n)
      throw GroupError(ViolationKind::Malformed, "generator dimensions do not match the lattice");
    gens.push_back(normalized(g));
  }

  std::vector<AffineElement> elements{id};
  std::map<IntMatrix, std::size_t> by_rotation{{id.rotation, 0}};
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const AffineElement cur = elements[queue.front()];
    queue.pop_front();
    for (const auto& g : gens) {
      AffineElement next = compose(g, cur);
      auto it = by_rotation.find(next.rotation);
      if (it != by_rotation.end()) {
        if (elements[it->second].translation != next.translation)
          throw GroupError(ViolationKind::NonGroup, "two elements share the rotation part but differ by a "
                                                    "non-lattice translation: " +
                                                        describe(elements[it->second]) + " vs " + describe(next));
        continue;
      }
      if (elements.size() >= max_elements)
        throw GroupError(ViolationKind::NonGroup, "closure exceeds " + std::to_string(max_elements) + " elements");
      by_rotation.emplace(next.rotation, elements.size());
      queue.push_back(elements.size());
      elements.push_back(std::move(next));
    }
  }
  return BieberbachGroup(std::move(name), std::move(basis), std::move(elements));
}

bool BieberbachGroup::is_torus() const { return elements_.size() == 1; }

BieberbachGroup BieberbachGroup::renamed(std::string name) const {
  BieberbachGroup g = *this;
  g.name_ = std::move(name);
  return g;
}

bool ValidationReport::has(ViolationKind kind) const {
  return std::any_of(violations.begin(), violations.end(), [&](const Violation& v) { return v.kind == kind; });
}

std::string to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::Malformed: return "malformed";
    case ViolationKind::NonCrystallographic: return "non-crystallographic";
    case ViolationKind::NonGroup: return "non-group";
    case ViolationKind::NonFree: return "non-free";
  }
  return "unknown";
}

bool has_fixed_point(const AffineElement& element) {
  const int n = element.rotation.rows();
  IntMatrix m = IntMatrix::identity(n) - element.rotation;
  for (const auto& w : integer_kernel(m.transpose()))
    if (fractional_part(dot(w, element.translation)) != 0) return false;
  return true;
}

ValidationReport validate(const BieberbachGroup& group) {
  ValidationReport report;
  const auto& elements = group.elements();
  auto add = [&](ViolationKind kind, std::string detail) { report.violations.push_back({kind, std::move(detail)}); };

  if (elements.empty() || !is_identity(elements.front().rotation) ||
      std::any_of(elements.front().translation.begin(), elements.front().translation.end(),
                  [](const Rational& x) { return x != 0; }))
    add(ViolationKind::Malformed, "the first coset representative must be the identity");

  const RatMatrix& gram = group.gram();
  std::map<IntMatrix, std::size_t> index;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    const auto& e = elements[i];
    const RatMatrix b = to_rational(e.rotation);
    if (b.transpose() * gram * b != gram) add(ViolationKind::NonCrystallographic, "not an isometry: " + describe(e));
    if (auto d = determinant(b); d != 1 && d != -1)
      add(ViolationKind::NonCrystallographic, "rotation does not preserve the lattice: " + describe(e));
    if (!index.emplace(e.rotation, i).second)
      add(ViolationKind::NonGroup, "rotation part repeated (translation lattice too small): " + describe(e));
  }
  if (report.has(ViolationKind::NonCrystallographic) || report.has(ViolationKind::Malformed)) return report;

  for (const auto& g : elements)
    for (const auto& h : elements) {
      const AffineElement gh = compose(g, h);
      auto it = index.find(gh.rotation);
      if (it == index.end()) {
        add(ViolationKind::NonGroup, "not closed: product has a new rotation part " + describe(gh));
        return report;
      }
      if (elements[it->second].translation != gh.translation) {
        add(ViolationKind::NonGroup, "not closed modulo the lattice: " + describe(gh));
        return report;
      }
    }

  for (const auto& e : elements)
    if (!is_identity(e.rotation) && has_fixed_point(e))
      add(ViolationKind::NonFree, "element has a fixed point: " + describe(e));
  return report;
}

RatMatrix dual_lattice(const RatMatrix& basis) { return inverse(basis).transpose(); }
RatMatrix dual_lattice(const BieberbachGroup& group) { return dual_lattice(group.basis()); }

IntMatrix lattice_rotation(const RatMatrix& basis, const RatMatrix& ambient_rotation) {
  check_square(basis);
  if (ambient_rotation.rows() != basis.rows() || ambient_rotation.cols() != basis.cols())
    throw GroupError(ViolationKind::Malformed, "rotation dimensions do not match the lattice");
  const RatMatrix local = inverse(basis) * ambient_rotation * basis;
  for (int i = 0; i < local.rows(); ++i)
    for (int j = 0; j < local.cols(); ++j)
      if (local(i, j).get_den() != 1)
        throw GroupError(ViolationKind::NonCrystallographic, "rotation does not map the lattice to itself");
  return to_integer(local);
}

RatVector lattice_translation(const RatMatrix& basis, const RatVector& ambient_translation) {
  check_square(basis);
  if (static_cast<int>(ambient_translation.size()) != basis.rows())
    throw GroupError(ViolationKind::Malformed, "translation dimension does not match the lattice");
  return solve(basis, ambient_translation);
}

BieberbachGroup conjugate(const BieberbachGroup& group, const RatMatrix& q, const RatVector& t) {
  const int n = group.n();
  if (q.rows() != n || q.cols() != n || static_cast<int>(t.size()) != n) throw Error("conjugating isometry has wrong size");
  if (q.transpose() * q != RatMatrix::identity(n)) throw Error("conjugating matrix is not orthogonal");
  RatMatrix basis = q * group.basis();
  const RatVector s = solve(basis, t);
  std::vector<AffineElement> elements;
  for (const auto& e : group.elements()) {
    RatVector a = e.translation;
    const RatVector bs = to_rational(e.rotation).apply(s);
    for (int i = 0; i < n; ++i) a[static_cast<std::size_t>(i)] += s[static_cast<std::size_t>(i)] - bs[static_cast<std::size_t>(i)];
    elements.push_back({e.rotation, std::move(a)});
  }
  return BieberbachGroup(group.name(), std::move(basis), std::move(elements));
}

BieberbachGroup change_basis(const BieberbachGroup& group, const IntMatrix& unimodular) {
  const RatMatrix u = to_rational(unimodular);
  if (auto d = determinant(u); d != 1 && d != -1) throw Error("basis change is not unimodular");
  const RatMatrix u_inv = inverse(u);
  std::vector<AffineElement> elements;
  for (const auto& e : group.elements())
    elements.push_back({to_integer(u_inv * to_rational(e.rotation) * u), u_inv.apply(e.translation)});
  return BieberbachGroup(group.name(), group.basis() * u, std::move(elements));
}

namespace {

IntMatrix diag_signs(std::initializer_list<int> signs) {
  IntMatrix m(static_cast<int>(signs.size()), static_cast<int>(signs.size()));
  int i = 0;
  for (int s : signs) m(i, i) = s, ++i;
  return m;
}

RatMatrix diag(std::initializer_list<Rational> entries) {
  RatMatrix m(static_cast<int>(entries.size()), static_cast<int>(entries.size()));
  int i = 0;
  for (const auto& x : entries) m(i, i) = x, ++i;
  return m;
}

RatVector half_vector(std::initializer_list<int> halves) {
  RatVector v;
  for (int h : halves) v.emplace_back(h, 2);
  for (auto& x : v) x.canonicalize();
  return v;
}

AffineElement screw(std::initializer_list<int> signs, std::initializer_list<int> halves) {
  IntMatrix b = diag_signs(signs);
  return {b, affine_translation(b, half_vector(halves))};
}

BieberbachGroup torus(std::string name, RatMatrix basis) {
  return BieberbachGroup::from_generators(std::move(name), std::move(basis), {});
}

BieberbachGroup first_of_order(int n, std::size_t order, const std::string& name) {
  DiagonalFamily fam;
  fam.n = n;
  fam.min_holonomy = fam.max_holonomy = static_cast<int>(order);
  for (const auto& g : enumerate_diagonal_family(fam, 1)) return g.renamed(name);
  throw Error("no diagonal group of the requested holonomy order");
}

std::vector<BieberbachGroup> build_presets() {
  const Rational half(1, 2);
  std::vector<BieberbachGroup> out;
  out.push_back(torus("torus-Z2", RatMatrix::identity(2)));
  out.push_back(torus("torus-rect2", diag({Rational(2), half})));
  out.push_back(torus("torus-skew2", RatMatrix{{1, half}, {0, 1}}));
  out.push_back(BieberbachGroup::from_generators("klein-bottle", RatMatrix::identity(2), {screw({1, -1}, {1, 0})}));
  out.push_back(torus("torus-Z3", RatMatrix::identity(3)));
  out.push_back(torus("torus-rect3", diag({Rational(1), Rational(1), Rational(2)})));
  out.push_back(torus("torus-skew3", RatMatrix{{1, half, 0}, {0, 1, half}, {0, 0, 1}}));
  out.push_back(
      BieberbachGroup::from_generators("dicosm", RatMatrix::identity(3), {screw({1, -1, -1}, {1, 0, 0})}));
  out.push_back(
      BieberbachGroup::from_generators("amphicosm", RatMatrix::identity(3), {screw({1, 1, -1}, {1, 0, 0})}));
  out.push_back(BieberbachGroup::from_generators(
      "hantzsche-wendt", RatMatrix::identity(3), {screw({1, -1, -1}, {1, 1, 0}), screw({-1, 1, -1}, {0, 1, 1})}));
  out.push_back(torus("torus-Z4", RatMatrix::identity(4)));
  out.push_back(torus("torus-rect4", diag({Rational(1), Rational(1), Rational(1), Rational(2)})));
  out.push_back(torus("torus-skew4", RatMatrix{{1, half, 0, 0}, {0, 1, 0, 0}, {0, 0, 1, half}, {0, 0, 0, 1}}));
  out.push_back(first_of_order(4, 2, "diag4-z2"));
  out.push_back(first_of_order(4, 4, "diag4-z2xz2"));
  return out;
}

}  // namespace

std::vector<BieberbachGroup> presets() {
  static const std::vector<BieberbachGroup> cached = build_presets();
  return cached;
}

BieberbachGroup find_preset(const std::string& name) {
  for (const auto& g : presets())
    if (g.name() == name) return g;
  throw Error("unknown preset '" + name + "'");
}

}  // namespace flatspec
