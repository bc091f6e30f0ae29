#pragma once

#include <Eigen/Dense>

#include <complex>
#include <compare>
#include <string>
#include <vector>

#include "flatspec/linalg.hpp"
#include "flatspec/weights.hpp"

namespace flatspec {

/// Global sign convention for the label delta of O(2m) irreducibles with
/// a_m = 0. The two choices differ by delta -> -delta on the families with
/// odd |Lambda|; the trivial representation is tau_{0,+1} under both.
enum class Convention { A, B };

/// How O(n-1) sits inside O(n): the standard block diag(B, 1), or as the
/// little group M of the motion-group dual. M is taken to be the stabilizer
/// of the character xi_{r e_n}, which is again diag(B, 1); the two agree on
/// labels but are kept apart at call sites.
enum class Embedding { Standard, M };

/// Irreducible representation tau_{Lambda,delta} of O(n).
///
/// n odd: delta = +-1. n even: delta = +-1 when a_m = 0, delta = 0 when
/// a_m > 0 (the representation on V_Lambda + V_barLambda). The highest
/// weight is always normalized to a_m >= 0.
class OIrrep {
 public:
  static OIrrep make(int n, std::vector<int> coords, int delta);
  static OIrrep trivial(int n) { return make(n, std::vector<int>(static_cast<std::size_t>(rank_of(n)), 0), 1); }
  /// The determinant character: tau_{0,-1}.
  static OIrrep determinant(int n) { return make(n, std::vector<int>(static_cast<std::size_t>(rank_of(n)), 0), -1); }

  int n() const { return n_; }
  const Weight& highest() const { return highest_; }
  int delta() const { return delta_; }

  friend bool operator==(const OIrrep&, const OIrrep&) = default;

  /// Processing order of the weight, then delta as +1, -1, 0.
  friend std::strong_ordering operator<=>(const OIrrep& a, const OIrrep& b);

 private:
  OIrrep(int n, Weight w, int delta) : n_(n), highest_(std::move(w)), delta_(delta) {}

  int n_;
  Weight highest_;
  int delta_;
};

/// "tau[(2,1);+1]" in O(n) context.
std::string to_string(const OIrrep& tau);

/// All irreducibles of O(n) with a_1 <= bound, each once, in processing order.
std::vector<OIrrep> catalog(int n, int bound);

std::int64_t dim(const OIrrep& tau);

/// tau (x) det, i.e. delta -> -delta; tau_{Lambda,0} is fixed.
OIrrep det_twist(const OIrrep& tau);

/// Label of the same representation under another convention. Only O(2m)
/// labels with a_m = 0 and odd |Lambda| change (delta -> -delta).
OIrrep relabel(const OIrrep& tau, Convention from, Convention to);

/// Every O(n) irreducible is self-dual.
OIrrep dual(const OIrrep& tau);

/// Restriction of tau to O(n-1). Multiplicity free, so returned as a set in
/// processing order. The single-kappa constituents are labeled by
/// character consistency (see orthogonal_dual.cpp). Requires n >= 2.
std::vector<OIrrep> branch(const OIrrep& tau, Embedding embedding, Convention convention = Convention::A);

/// [sigma : tau restricted], always 0 or 1.
int restriction_mult(const OIrrep& sigma, const OIrrep& tau, Embedding embedding,
                     Convention convention = Convention::A);

/// Conjugacy class of a finite-order (or torus-parameterized) element of O(n),
/// i.e. its eigenvalue multiset: +1 with multiplicity plus_ones, -1 with
/// multiplicity minus_ones, and conjugate pairs exp(+-i theta) with theta in (0, pi).
struct OrthogonalClass {
  int plus_ones = 0;
  int minus_ones = 0;
  std::vector<double> pair_angles;

  int n() const { return plus_ones + minus_ones + 2 * static_cast<int>(pair_angles.size()); }
  int det() const { return minus_ones % 2 == 0 ? 1 : -1; }

  /// Class of -B.
  OrthogonalClass negated() const;
  /// Class of B restricted to the orthogonal complement of a fixed unit vector.
  OrthogonalClass without_fixed_vector() const;
  /// Class of diag(B, 1).
  OrthogonalClass with_fixed_vector() const;
  /// Maximal-torus angles of an element of SO(n) (requires det = +1).
  std::vector<double> torus_angles() const;
};

class CharacterError : public Error {
 public:
  using Error::Error;
};

/// Finite-order orthogonal matrix. The conjugacy class is read off from
/// the traces of its powers: the multiplicity of exp(2 pi i j / N) is
/// (1/N) sum_k tr(B^k) exp(-2 pi i j k / N).
class OrthogonalElement {
 public:
  /// Ambient floating matrix; checks orthogonality and certifies finite order.
  explicit OrthogonalElement(Eigen::MatrixXd matrix, int max_order = 1000, double tolerance = 1e-9);

  /// Integer matrix in lattice coordinates (orthogonal with respect to some
  /// Gram form, checked by the caller); order and traces are exact.
  static OrthogonalElement from_lattice(const IntMatrix& rotation, int max_order = 1000);

  int n() const { return static_cast<int>(matrix_.rows()); }
  int order() const { return order_; }
  int det() const { return class_.det(); }
  const Eigen::MatrixXd& matrix() const { return matrix_; }
  const OrthogonalClass& conjugacy_class() const { return class_; }

 private:
  OrthogonalElement() = default;
  void classify(const std::vector<double>& power_traces);

  Eigen::MatrixXd matrix_;
  int order_ = 1;
  OrthogonalClass class_;
};

/// Character of tau at a conjugacy class (real: every O(n) irreducible is self-dual).
double character(const OIrrep& tau, const OrthogonalClass& cls, Convention convention = Convention::A);

std::complex<double> character(const OIrrep& tau, const OrthogonalElement& element,
                               Convention convention = Convention::A);

namespace detail {
/// Even n, det -1 only: evaluates through -B (which also fixes a vector) and
/// the central element -I. Used to cross-check the primary reduction path.
double character_via_negation(const OIrrep& tau, const OrthogonalClass& cls, Convention convention);
/// Sign s with kappa_mu = s * convention_sign(mu), as fixed by character consistency.
int odd_branch_sign(const OIrrep& tau, Convention convention);
/// +1 under convention A; (-1)^{|mu|} under B (even-dimensional groups only).
int convention_sign(const Weight& mu, Convention convention);
}  // namespace detail

}  // namespace flatspec
