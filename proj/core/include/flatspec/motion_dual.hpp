#pragma once

#include <compare>
#include <string>
#include <variant>
#include <vector>

#include "flatspec/orthogonal_dual.hpp"
#include "flatspec/rational.hpp"

namespace flatspec {

/// tau~ : the K-type tau extended trivially over the translations.
struct TauTilde {
  OIrrep tau;
  friend bool operator==(const TauTilde&, const TauTilde&) = default;
};

/// pi_{sigma,r}, induced from sigma (x) xi_{r e_n}. Carries nu = r^2 so that
/// all eigenvalue bookkeeping stays exact; the Laplace eigenvalue is 4 pi^2 nu.
struct PiSigmaR {
  OIrrep sigma;  // irreducible of M = O(n-1)
  Rational nu;
  friend bool operator==(const PiSigmaR& a, const PiSigmaR& b) { return a.sigma == b.sigma && a.nu == b.nu; }
};

using MotionRep = std::variant<TauTilde, PiSigmaR>;

/// Throws unless nu > 0.
PiSigmaR make_pi(const OIrrep& sigma, const Rational& nu);

/// Scalar by which C = e_1^2 + ... + e_n^2 acts, in units of 4 pi^2:
/// 0 on tau~ and -nu on pi_{sigma, sqrt(nu)}.
Rational casimir_scalar(const MotionRep& pi);

/// Support of tau in the dual: tau~ together with every family G^(sigma)
/// whose sigma occurs in tau restricted to M (each exactly once).
struct GhatTau {
  TauTilde tau_tilde;
  std::vector<OIrrep> sigmas;
};

GhatTau ghat_tau(const OIrrep& tau, Convention convention = Convention::A);

std::string to_string(const MotionRep& pi);

}  // namespace flatspec
