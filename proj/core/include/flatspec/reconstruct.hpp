#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "flatspec/family.hpp"
#include "flatspec/motion_dual.hpp"
#include "flatspec/spectra.hpp"

namespace flatspec {

/// Source of tau-spectra. Implementations must be pure; spectrum() may be
/// called concurrently.
class SpectraProvider {
 public:
  virtual ~SpectraProvider() = default;
  virtual int n() const = 0;
  virtual Convention convention() const = 0;
  virtual SpectrumTable spectrum(const OIrrep& tau, const Rational& nu_max) const = 0;
};

class OracleProvider final : public SpectraProvider {
 public:
  OracleProvider(const BieberbachGroup& group, const Rational& nu_max, ComputeOptions options = {})
      : oracle_(group, nu_max, options) {}

  int n() const override { return oracle_.group().n(); }
  Convention convention() const override { return oracle_.convention(); }
  SpectrumTable spectrum(const OIrrep& tau, const Rational& nu_max) const override {
    return oracle_.spectrum(tau, nu_max);
  }
  const SpectrumOracle& oracle() const { return oracle_; }

 private:
  SpectrumOracle oracle_;
};

/// Spectra synthesized from a given multiplicity table.
class TableProvider final : public SpectraProvider {
 public:
  explicit TableProvider(MultiplicityTable table) : table_(std::move(table)) {}

  int n() const override { return table_.n; }
  Convention convention() const override { return table_.convention; }
  SpectrumTable spectrum(const OIrrep& tau, const Rational& nu_max) const override {
    return tau_spectrum_from_multiplicities(table_, tau, nu_max, "synthetic");
  }

 private:
  MultiplicityTable table_;
};

/// Raised on a negative or inconsistent intermediate multiplicity.
class ReconstructionError : public Error {
 public:
  ReconstructionError(const std::string& what, OIrrep sigma, Rational nu)
      : Error(what), sigma_(std::move(sigma)), nu_(std::move(nu)) {}
  const OIrrep& sigma() const { return sigma_; }
  const Rational& nu() const { return nu_; }

 private:
  OIrrep sigma_;
  Rational nu_;
};

/// n_Gamma(tau~) = d_0(tau) for every tau in catalog(n, weight_bound).
std::map<OIrrep, std::int64_t> zero_multiplicities(const SpectraProvider& provider, int weight_bound);

/// Inverts the spectrum formula: walks the weights of O(n-1) in processing
/// order, lifts each to O(n), and peels off the contributions of the
/// already-known constituents. Requires n >= 2.
MultiplicityTable reconstruct_multiplicities(const SpectraProvider& provider, int weight_bound,
                                             const Rational& nu_max);

struct RoundTripFailure {
  OIrrep tau;
  SpectrumMismatch mismatch;
};

/// Regenerates every tau-spectrum in catalog(n, weight_bound) from the table
/// and compares against the provider. nullopt on success.
std::optional<RoundTripFailure> check_round_trip(const SpectraProvider& provider, const MultiplicityTable& table);

struct Witness {
  MotionRep pi;
  std::int64_t first;
  std::int64_t second;
};

/// Order-minimal representation where the tables differ: zero part first
/// (catalog order), then (sigma, nu).
std::optional<Witness> compare_multiplicities(const MultiplicityTable& a, const MultiplicityTable& b);

std::optional<Witness> are_representation_equivalent(const BieberbachGroup& g1, const BieberbachGroup& g2,
                                                     int weight_bound, const Rational& nu_max,
                                                     ComputeOptions options = {});

struct TauVerdict {
  OIrrep tau;
  std::optional<SpectrumMismatch> mismatch;
};

struct IsospectralityReport {
  std::string first;
  std::string second;
  int weight_bound = 0;
  Rational nu_max;
  Convention convention = Convention::A;
  std::vector<TauVerdict> verdicts;  // catalog order
  std::optional<Witness> witness;

  bool all_isospectral() const;
  bool equivalent() const { return !witness.has_value(); }
  const TauVerdict* first_distinguishing() const;
  /// The two notions agree at these cutoffs.
  bool consistent() const { return all_isospectral() == equivalent(); }
};

IsospectralityReport strong_isospectrality_report(const BieberbachGroup& g1, const BieberbachGroup& g2,
                                                  int weight_bound, const Rational& nu_max,
                                                  ComputeOptions options = {});

struct DistinguishingPair {
  BieberbachGroup first;
  BieberbachGroup second;
  OIrrep tau;
  SpectrumMismatch mismatch;
};

struct SearchResult {
  std::size_t groups = 0;
  std::size_t buckets = 0;               // distinct trivial-bundle spectra
  std::size_t indistinguishable_pairs = 0;  // same bucket, every tau-spectrum equal
  std::vector<DistinguishingPair> pairs;
};

/// Groups of the family that share the trivial-bundle spectrum but are told
/// apart by some other tau with a_1 <= weight_bound.
SearchResult search_distinguishing_pairs(const DiagonalFamily& family, int weight_bound, const Rational& nu_max,
                                         ComputeOptions options = {});

}  // namespace flatspec
