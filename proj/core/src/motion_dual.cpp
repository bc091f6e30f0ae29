#include "flatspec/motion_dual.hpp"

namespace flatspec {

PiSigmaR make_pi(const OIrrep& sigma, const Rational& nu) {
  if (nu <= 0) throw Error("pi_{sigma,r} requires r > 0");
  return PiSigmaR{sigma, nu};
}

Rational casimir_scalar(const MotionRep& pi) {
  if (const auto* p = std::get_if<PiSigmaR>(&pi)) return -p->nu;
  return 0;
}

GhatTau ghat_tau(const OIrrep& tau, Convention convention) {
  return GhatTau{TauTilde{tau}, branch(tau, Embedding::M, convention)};
}

std::string to_string(const MotionRep& pi) {
  if (const auto* t = std::get_if<TauTilde>(&pi)) return "tau~[" + to_string(t->tau) + "]";
  const auto& p = std::get<PiSigmaR>(pi);
  return "pi[" + to_string(p.sigma) + "; nu=" + to_string(p.nu) + "]";
}

}  // namespace flatspec
