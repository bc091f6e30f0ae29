#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "flatspec/bieberbach.hpp"
#include "flatspec/orthogonal_dual.hpp"

namespace flatspec {

/// Eigenvalue multiplicities of the twisted Laplacian on sections of the
/// bundle associated with tau. Keys are nu with eigenvalue 4 pi^2 nu.
/// The nu = 0 row is always present; other zero rows are omitted.
struct SpectrumTable {
  std::string group;
  OIrrep tau;
  Rational nu_max;
  std::map<Rational, std::int64_t> entries;

  std::int64_t at(const Rational& nu) const;
  friend bool operator==(const SpectrumTable&, const SpectrumTable&) = default;
};

/// Multiplicities n_Gamma(pi) of the right regular representation, up to
/// the cutoffs. Missing entries are zero.
struct MultiplicityTable {
  int n = 0;
  int weight_bound = 0;
  Rational nu_max;
  Convention convention = Convention::A;
  std::map<OIrrep, std::int64_t> zero_part;                            // tau~ -> n
  std::map<std::pair<OIrrep, Rational>, std::int64_t> continuous_part;  // (sigma, nu) -> n

  std::int64_t zero(const OIrrep& tau) const;
  std::int64_t continuous(const OIrrep& sigma, const Rational& nu) const;
  friend bool operator==(const MultiplicityTable&, const MultiplicityTable&) = default;
};

class CutoffError : public Error {
 public:
  using Error::Error;
};

class IntegralityError : public Error {
 public:
  using Error::Error;
};

struct ComputeOptions {
  Convention convention = Convention::A;
  unsigned threads = 1;
};

/// Fourier-mode computation of tau-spectra for one group:
///
///   d_nu = (1/|F|) sum_{(B,a)} chi_tau(B) sum_{u in L*, |u|^2 = nu, B u = u} exp(-2 pi i <u, a>).
///
/// The dual-lattice shells and, per coset representative, the exact counts
/// of B-fixed vectors by phase residue are computed once (in parallel over
/// lattice points); spectra for individual tau are then cheap.
class SpectrumOracle {
 public:
  SpectrumOracle(BieberbachGroup group, Rational nu_max, ComputeOptions options = {});

  const BieberbachGroup& group() const { return group_; }
  const Rational& nu_max() const { return nu_max_; }
  Convention convention() const { return options_.convention; }

  /// Throws CutoffError if nu_max exceeds the precomputed range.
  SpectrumTable spectrum(const OIrrep& tau, const Rational& nu_max) const;
  SpectrumTable spectrum(const OIrrep& tau) const { return spectrum(tau, nu_max_); }

  /// Number of dual-lattice vectors of each norm (the torus count).
  const std::map<Rational, std::int64_t>& shell_sizes() const { return shell_sizes_; }

 private:
  BieberbachGroup group_;
  Rational nu_max_;
  ComputeOptions options_;
  std::vector<OrthogonalClass> classes_;
  std::vector<Rational> norms_;                   // shells in increasing order
  std::vector<std::vector<double>> phase_sums_;  // [shell][element], from exact residue counts
  std::map<Rational, std::int64_t> shell_sizes_;
};

SpectrumTable tau_spectrum_oracle(const BieberbachGroup& group, const OIrrep& tau, const Rational& nu_max,
                                  ComputeOptions options = {});

/// d_0 = zero_part[tau]; d_nu = sum over branch(tau, M) of continuous_part[(sigma, nu)].
SpectrumTable tau_spectrum_from_multiplicities(const MultiplicityTable& mult, const OIrrep& tau,
                                               const Rational& nu_max, const std::string& group = "");

struct SpectrumMismatch {
  Rational nu;
  std::int64_t first;
  std::int64_t second;
};

/// nullopt when equal; otherwise the smallest nu where they differ.
std::optional<SpectrumMismatch> compare_spectra(const SpectrumTable& a, const SpectrumTable& b);

std::optional<SpectrumMismatch> are_tau_isospectral(const BieberbachGroup& g1, const BieberbachGroup& g2,
                                                    const OIrrep& tau, const Rational& nu_max,
                                                    ComputeOptions options = {});

}  // namespace flatspec
