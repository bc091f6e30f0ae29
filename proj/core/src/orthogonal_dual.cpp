#include "flatspec/orthogonal_dual.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

#include "flatspec/weyl.hpp"

namespace flatspec {

namespace {

int delta_rank(int delta) { return delta == 1 ? 0 : (delta == -1 ? 1 : 2); }

int parity_sign(int k) { return k % 2 == 0 ? 1 : -1; }

// All b with a[i] >= b[i] >= a[i+1] (i < count-1) and, for the last slot,
// a[count-1] >= b[count-1] >= floor_last. count may be a.size() or a.size()-1.
std::vector<std::vector<int>> interlacing(const std::vector<int>& a, int count, int floor_last) {
  std::vector<std::vector<int>> out;
  std::vector<int> b(static_cast<std::size_t>(count));
  auto rec = [&](auto&& self, int i) -> void {
    if (i == count) {
      out.push_back(b);
      return;
    }
    const int hi = a[static_cast<std::size_t>(i)];
    const int lo = i + 1 < static_cast<int>(a.size()) ? a[static_cast<std::size_t>(i + 1)] : floor_last;
    for (int v = lo; v <= hi; ++v) {
      b[static_cast<std::size_t>(i)] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

// Generic angles for the kappa consistency probe; distinct and away from 0, pi.
std::vector<double> probe_angles(int count, int attempt) {
  static constexpr double base[] = {0.91, 1.73, 2.37, 0.43, 2.83, 1.29, 0.67, 2.05};
  std::vector<double> out;
  for (int j = 0; j < count; ++j) {
    double t = base[(j + attempt) % 8] + 0.011 * attempt;
    out.push_back(std::fmod(t, std::numbers::pi - 0.05) + 0.02);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::mutex branch_mutex;
std::map<std::tuple<OIrrep, Embedding, Convention>, std::vector<OIrrep>>& branch_cache() {
  static std::map<std::tuple<OIrrep, Embedding, Convention>, std::vector<OIrrep>> c;
  return c;
}

std::vector<OIrrep> compute_standard_branch(const OIrrep& tau, Convention convention) {
  const int n = tau.n();
  const std::vector<int>& a = tau.highest().coords();
  const int m = rank_of(n);
  std::vector<OIrrep> out;
  if (n % 2 == 0) {
    // O(2m) -> O(2m-1)
    const int sign = tau.delta() * detail::convention_sign(tau.highest(), convention);
    for (const auto& b : interlacing(a, m - 1, 0)) {
      int size = 0;
      for (int x : b) size += x;
      if (tau.delta() == 0) {
        out.push_back(OIrrep::make(n - 1, b, 1));
        out.push_back(OIrrep::make(n - 1, b, -1));
      } else {
        out.push_back(OIrrep::make(n - 1, b, sign * parity_sign(size)));
      }
    }
  } else {
    // O(2m+1) -> O(2m)
    const auto constituents = interlacing(a, m, 0);
    const bool any_single = std::any_of(constituents.begin(), constituents.end(),
                                        [](const auto& b) { return b.back() == 0; });
    const int s = any_single ? detail::odd_branch_sign(tau, convention) : 1;
    for (const auto& b : constituents) {
      if (b.back() > 0) {
        out.push_back(OIrrep::make(n - 1, b, 0));
      } else {
        const Weight mu = Weight::validate(b, m, Parity::Even);
        out.push_back(OIrrep::make(n - 1, b, s * detail::convention_sign(mu, convention)));
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

OIrrep OIrrep::make(int n, std::vector<int> coords, int delta) {
  if (n < 1) throw WeightError("O(n) requires n >= 1");
  Weight w = Weight::validate(std::move(coords), rank_of(n), parity_of(n));
  if (w.last() < 0) throw WeightError("O(n) labels use the representative with a_m >= 0");
  const bool paired = n % 2 == 0 && w.last() > 0;
  if (paired && delta != 0) throw WeightError("O(2m) with a_m > 0 requires delta = 0");
  if (!paired && delta != 1 && delta != -1) throw WeightError("delta must be +1 or -1 here");
  return OIrrep(n, std::move(w), delta);
}

std::strong_ordering operator<=>(const OIrrep& a, const OIrrep& b) {
  if (auto c = a.n_ <=> b.n_; c != 0) return c;
  if (auto c = processing_order(a.highest_, b.highest_); c != 0) return c;
  return delta_rank(a.delta_) <=> delta_rank(b.delta_);
}

std::string to_string(const OIrrep& tau) {
  std::string s;
  const auto& c = tau.highest().coords();
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(c[i]);
  }
  s += ":";
  s += tau.delta() > 0 ? "+1" : (tau.delta() < 0 ? "-1" : "0");
  return s;
}

std::vector<OIrrep> catalog(int n, int bound) {
  std::vector<OIrrep> out;
  for (const auto& w : enumerate_weights(rank_of(n), parity_of(n), bound)) {
    if (w.last() < 0) continue;
    if (n % 2 == 1 || w.last() == 0) {
      out.push_back(OIrrep::make(n, w.coords(), 1));
      out.push_back(OIrrep::make(n, w.coords(), -1));
    } else {
      out.push_back(OIrrep::make(n, w.coords(), 0));
    }
  }
  return out;
}

std::int64_t dim(const OIrrep& tau) {
  const std::int64_t d = weyl_dimension(tau.n(), tau.highest().coords());
  return tau.delta() == 0 ? 2 * d : d;
}

OIrrep det_twist(const OIrrep& tau) { return OIrrep::make(tau.n(), tau.highest().coords(), -tau.delta()); }

OIrrep dual(const OIrrep& tau) { return tau; }

OIrrep relabel(const OIrrep& tau, Convention from, Convention to) {
  if (from == to || tau.n() % 2 == 1 || tau.delta() == 0 || tau.highest().size() % 2 == 0) return tau;
  return det_twist(tau);
}

std::vector<OIrrep> branch(const OIrrep& tau, Embedding embedding, Convention convention) {
  if (tau.n() < 2) throw Error("branching requires n >= 2");
  auto key = std::make_tuple(tau, embedding, convention);
  {
    std::lock_guard lock(branch_mutex);
    if (auto it = branch_cache().find(key); it != branch_cache().end()) return it->second;
  }
  // sigma in M-hat is read through the stabilizer of xi_{r e_n}, which is
  // diag(B, 1); the labels therefore coincide with the standard branch.
  std::vector<OIrrep> out = compute_standard_branch(tau, convention);
  std::lock_guard lock(branch_mutex);
  return branch_cache().emplace(std::move(key), std::move(out)).first->second;
}

int restriction_mult(const OIrrep& sigma, const OIrrep& tau, Embedding embedding, Convention convention) {
  if (sigma.n() + 1 != tau.n()) return 0;
  const auto b = branch(tau, embedding, convention);
  return std::binary_search(b.begin(), b.end(), sigma) ? 1 : 0;
}

// ---------------------------------------------------------------------------

OrthogonalClass OrthogonalClass::negated() const {
  OrthogonalClass c;
  c.plus_ones = minus_ones;
  c.minus_ones = plus_ones;
  for (double t : pair_angles) c.pair_angles.push_back(std::numbers::pi - t);
  std::sort(c.pair_angles.begin(), c.pair_angles.end());
  return c;
}

OrthogonalClass OrthogonalClass::without_fixed_vector() const {
  if (plus_ones < 1) throw CharacterError("element has no fixed unit vector");
  OrthogonalClass c = *this;
  --c.plus_ones;
  return c;
}

OrthogonalClass OrthogonalClass::with_fixed_vector() const {
  OrthogonalClass c = *this;
  ++c.plus_ones;
  return c;
}

std::vector<double> OrthogonalClass::torus_angles() const {
  if (det() != 1) throw CharacterError("torus angles requested for a det -1 element");
  std::vector<double> angles = pair_angles;
  for (int i = 0; i < minus_ones / 2; ++i) angles.push_back(std::numbers::pi);
  for (int i = 0; i < plus_ones / 2; ++i) angles.push_back(0.0);
  return angles;
}

OrthogonalElement::OrthogonalElement(Eigen::MatrixXd matrix, int max_order, double tolerance)
    : matrix_(std::move(matrix)) {
  const auto n = matrix_.rows();
  if (n != matrix_.cols()) throw CharacterError("orthogonal element must be square");
  const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  if ((matrix_.transpose() * matrix_ - id).cwiseAbs().maxCoeff() > tolerance * std::max<double>(1.0, static_cast<double>(n)))
    throw CharacterError("matrix is not orthogonal");
  Eigen::MatrixXd power = matrix_;
  order_ = 0;
  for (int k = 1; k <= max_order; ++k) {
    if (n == 0 || (power - id).cwiseAbs().maxCoeff() < 1e-7) {
      order_ = k;
      break;
    }
    power = power * matrix_;
  }
  if (order_ == 0) throw CharacterError("could not certify finite order within " + std::to_string(max_order));
  std::vector<double> traces;
  power = Eigen::MatrixXd::Identity(n, n);
  for (int k = 0; k < order_; ++k) {
    traces.push_back(power.trace());
    power = power * matrix_;
  }
  classify(traces);
}

OrthogonalElement OrthogonalElement::from_lattice(const IntMatrix& rotation, int max_order) {
  OrthogonalElement e;
  const int n = rotation.rows();
  e.matrix_ = Eigen::MatrixXd(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) e.matrix_(i, j) = static_cast<double>(rotation(i, j));
  e.order_ = n == 0 ? 1 : matrix_order(rotation, max_order);
  if (e.order_ == 0) throw CharacterError("could not certify finite order within " + std::to_string(max_order));
  std::vector<double> traces;
  IntMatrix power = IntMatrix::identity(n);
  for (int k = 0; k < e.order_; ++k) {
    std::int64_t t = 0;
    for (int i = 0; i < n; ++i) t += power(i, i);
    traces.push_back(static_cast<double>(t));
    power = power * rotation;
  }
  e.classify(traces);
  return e;
}

void OrthogonalElement::classify(const std::vector<double>& power_traces) {
  const int order = static_cast<int>(power_traces.size());
  const int n = static_cast<int>(std::lround(power_traces.empty() ? 0.0 : power_traces[0]));
  std::vector<int> mult(static_cast<std::size_t>(order));
  int total = 0;
  for (int j = 0; j < order; ++j) {
    long double s = 0;
    for (int k = 0; k < order; ++k)
      s += power_traces[k] * std::cos(2.0L * std::numbers::pi_v<long double> * ((static_cast<long>(j) * k) % order) / order);
    s /= order;
    const long r = std::lround(static_cast<double>(s));
    if (std::fabs(static_cast<double>(s) - static_cast<double>(r)) > 1e-6 || r < 0)
      throw CharacterError("eigenvalue multiplicities are not integral");
    mult[j] = static_cast<int>(r);
    total += mult[j];
  }
  if (total != n) throw CharacterError("eigenvalue multiplicities do not add up to n");
  class_ = OrthogonalClass{};
  class_.plus_ones = mult[0];
  if (order % 2 == 0) class_.minus_ones = mult[static_cast<std::size_t>(order / 2)];
  for (int j = 1; 2 * j < order; ++j) {
    if (mult[j] != mult[static_cast<std::size_t>(order - j)]) throw CharacterError("eigenvalues are not closed under conjugation");
    for (int r = 0; r < mult[j]; ++r) class_.pair_angles.push_back(2.0 * std::numbers::pi * j / order);
  }
}

// ---------------------------------------------------------------------------

double character(const OIrrep& tau, const OrthogonalClass& cls, Convention convention) {
  const int n = tau.n();
  if (cls.n() != n) throw CharacterError("element and representation have different n");
  const auto& coords = tau.highest().coords();
  if (cls.det() == 1) {
    const auto angles = cls.torus_angles();
    double v = so_character(n, coords, angles);
    if (tau.delta() == 0) v += so_character(n, bar(tau.highest()).coords(), angles);
    return v;
  }
  if (n % 2 == 1) {
    // g0 = -Id is central: tau(g) = delta * tau_Lambda(-g).
    return tau.delta() * so_character(n, coords, cls.negated().torus_angles());
  }
  // Even n, det -1: B fixes a unit vector; move it to e_n and restrict.
  const OrthogonalClass reduced = cls.without_fixed_vector();
  double v = 0;
  for (const auto& sigma : branch(tau, Embedding::Standard, convention)) v += character(sigma, reduced, convention);
  return v;
}

std::complex<double> character(const OIrrep& tau, const OrthogonalElement& element, Convention convention) {
  return {character(tau, element.conjugacy_class(), convention), 0.0};
}

namespace detail {

int convention_sign(const Weight& mu, Convention convention) {
  return convention == Convention::A ? 1 : parity_sign(mu.size());
}

double character_via_negation(const OIrrep& tau, const OrthogonalClass& cls, Convention convention) {
  const int n = tau.n();
  if (n % 2 != 0 || cls.det() != -1) throw CharacterError("negation path applies to det -1 elements of O(2m)");
  // -Id lies in SO(2m) and acts on V_Lambda (and V_barLambda) by (-1)^{|Lambda|}.
  const double central = parity_sign(tau.highest().size());
  const OrthogonalClass reduced = cls.negated().without_fixed_vector();
  double v = 0;
  for (const auto& sigma : branch(tau, Embedding::Standard, convention)) v += character(sigma, reduced, convention);
  return central * v;
}

int odd_branch_sign(const OIrrep& tau, Convention convention) {
  const int n = tau.n();
  const int m = rank_of(n);
  const auto constituents = interlacing(tau.highest().coords(), m, 0);
  const double scale = std::max<double>(1.0, static_cast<double>(dim(tau)));
  for (int attempt = 0; attempt < 8; ++attempt) {
    // A det -1 element R of O(2m); tau is evaluated at diag(R, 1).
    OrthogonalClass probe;
    probe.plus_ones = 1;
    probe.minus_ones = 1;
    probe.pair_angles = probe_angles(m - 1, attempt);
    const double target = character(tau, probe.with_fixed_vector(), convention);
    double candidate = 0;
    for (const auto& b : constituents) {
      if (b.back() != 0) continue;  // delta = 0 constituents vanish off SO(2m)
      const Weight mu = Weight::validate(b, m, Parity::Even);
      candidate += convention_sign(mu, convention) * character(OIrrep::make(n - 1, b, 1), probe, convention);
    }
    if (std::fabs(candidate) < 1e-3) continue;
    const int s = target / candidate > 0 ? 1 : -1;
    if (std::fabs(target - s * candidate) > 1e-8 * scale)
      throw CharacterError("no kappa assignment is consistent with the restricted character of " + to_string(tau));
    return s;
  }
  throw CharacterError("kappa probe degenerate for " + to_string(tau));
}

}  // namespace detail

}  // namespace flatspec
