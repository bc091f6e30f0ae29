#include "flatspec/reconstruct.hpp"

#include <algorithm>
#include <set>

namespace flatspec {

namespace {

std::map<std::pair<OIrrep, Rational>, std::int64_t>::const_iterator first_entry(const MultiplicityTable& t,
                                                                              const OIrrep& sigma) {
  return t.continuous_part.lower_bound({sigma, Rational(0)});
}

}  // namespace

std::map<OIrrep, std::int64_t> zero_multiplicities(const SpectraProvider& provider, int weight_bound) {
  std::map<OIrrep, std::int64_t> out;
  for (const auto& tau : catalog(provider.n(), weight_bound)) out[tau] = provider.spectrum(tau, 0).at(0);
  return out;
}

MultiplicityTable reconstruct_multiplicities(const SpectraProvider& provider, int weight_bound,
                                             const Rational& nu_max) {
  const int n = provider.n();
  if (n < 2) throw Error("reconstruction requires n >= 2");
  if (weight_bound < 0) throw Error("weight bound must be nonnegative");
  const Convention conv = provider.convention();

  MultiplicityTable table;
  table.n = n;
  table.weight_bound = weight_bound;
  table.nu_max = nu_max;
  table.convention = conv;
  table.zero_part = zero_multiplicities(provider, weight_bound);

  const int mrank = rank_of(n - 1);
  std::set<OIrrep> done;
  for (const Weight& mu0 : enumerate_weights(mrank, parity_of(n - 1), weight_bound)) {
    if (mu0.last() < 0) continue;
    std::vector<int> lifted = mu0.coords();
    lifted.resize(static_cast<std::size_t>(rank_of(n)), 0);

    for (int delta : {1, -1}) {
      const OIrrep tau = OIrrep::make(n, lifted, delta);
      const auto constituents = branch(tau, Embedding::M, conv);
      auto target = std::find_if(constituents.begin(), constituents.end(),
                                 [&](const OIrrep& s) { return s.highest() == mu0; });
      if (target == constituents.end()) throw Error("lift of " + to_string(mu0) + " does not contain it");
      const OIrrep sigma = *target;

      const SpectrumTable spec = provider.spectrum(tau, nu_max);
      std::map<Rational, std::int64_t> values;
      for (const auto& [nu, d] : spec.entries)
        if (nu > 0) values[nu] += d;
      for (const auto& other : constituents) {
        if (other == sigma) continue;
        if (!done.contains(other))
          throw Error("processing order violated: " + to_string(other) + " needed before " + to_string(sigma));
        for (auto it = first_entry(table, other); it != table.continuous_part.end() && it->first.first == other; ++it)
          values[it->first.second] -= it->second;
      }

      for (const auto& [nu, v] : values)
        if (v < 0)
          throw ReconstructionError("negative multiplicity " + std::to_string(v) + " for " + to_string(sigma) +
                                        " at nu = " + to_string(nu) + " (weight " + to_string(mu0) + ")",
                                    sigma, nu);

      if (done.contains(sigma)) {
        for (const auto& [nu, v] : values)
          if (table.continuous(sigma, nu) != v)
            throw ReconstructionError("the two lifts of " + to_string(mu0) + " disagree at nu = " + to_string(nu),
                                      sigma, nu);
        continue;
      }
      for (const auto& [nu, v] : values)
        if (v != 0) table.continuous_part[{sigma, nu}] = v;
      done.insert(sigma);
    }
  }
  return table;
}

std::optional<RoundTripFailure> check_round_trip(const SpectraProvider& provider, const MultiplicityTable& table) {
  for (const auto& tau : catalog(table.n, table.weight_bound)) {
    const auto expected = provider.spectrum(tau, table.nu_max);
    const auto regenerated = tau_spectrum_from_multiplicities(table, tau, table.nu_max, expected.group);
    if (auto m = compare_spectra(expected, regenerated)) return RoundTripFailure{tau, *m};
  }
  return std::nullopt;
}

std::optional<Witness> compare_multiplicities(const MultiplicityTable& a, const MultiplicityTable& b) {
  std::set<OIrrep> taus;
  for (const auto& [tau, v] : a.zero_part) taus.insert(tau);
  for (const auto& [tau, v] : b.zero_part) taus.insert(tau);
  for (const auto& tau : taus)
    if (a.zero(tau) != b.zero(tau)) return Witness{TauTilde{tau}, a.zero(tau), b.zero(tau)};

  std::set<std::pair<OIrrep, Rational>> keys;
  for (const auto& [k, v] : a.continuous_part) keys.insert(k);
  for (const auto& [k, v] : b.continuous_part) keys.insert(k);
  for (const auto& [sigma, nu] : keys)
    if (a.continuous(sigma, nu) != b.continuous(sigma, nu))
      return Witness{PiSigmaR{sigma, nu}, a.continuous(sigma, nu), b.continuous(sigma, nu)};
  return std::nullopt;
}

std::optional<Witness> are_representation_equivalent(const BieberbachGroup& g1, const BieberbachGroup& g2,
                                                     int weight_bound, const Rational& nu_max,
                                                     ComputeOptions options) {
  if (g1.n() != g2.n()) throw Error("groups have different dimensions");
  const OracleProvider p1(g1, nu_max, options);
  const OracleProvider p2(g2, nu_max, options);
  return compare_multiplicities(reconstruct_multiplicities(p1, weight_bound, nu_max),
                                reconstruct_multiplicities(p2, weight_bound, nu_max));
}

bool IsospectralityReport::all_isospectral() const {
  return std::all_of(verdicts.begin(), verdicts.end(), [](const TauVerdict& v) { return !v.mismatch; });
}

const TauVerdict* IsospectralityReport::first_distinguishing() const {
  for (const auto& v : verdicts)
    if (v.mismatch) return &v;
  return nullptr;
}

IsospectralityReport strong_isospectrality_report(const BieberbachGroup& g1, const BieberbachGroup& g2,
                                                  int weight_bound, const Rational& nu_max,
                                                  ComputeOptions options) {
  if (g1.n() != g2.n()) throw Error("groups have different dimensions");
  const OracleProvider p1(g1, nu_max, options);
  const OracleProvider p2(g2, nu_max, options);

  IsospectralityReport report;
  report.first = g1.name();
  report.second = g2.name();
  report.weight_bound = weight_bound;
  report.nu_max = nu_max;
  report.convention = options.convention;
  for (const auto& tau : catalog(g1.n(), weight_bound))
    report.verdicts.push_back({tau, compare_spectra(p1.spectrum(tau, nu_max), p2.spectrum(tau, nu_max))});
  report.witness = compare_multiplicities(reconstruct_multiplicities(p1, weight_bound, nu_max),
                                          reconstruct_multiplicities(p2, weight_bound, nu_max));
  return report;
}

SearchResult search_distinguishing_pairs(const DiagonalFamily& family, int weight_bound, const Rational& nu_max,
                                         ComputeOptions options) {
  SearchResult result;
  const auto groups = enumerate_diagonal_family(family);
  result.groups = groups.size();

  std::vector<OracleProvider> providers;
  providers.reserve(groups.size());
  for (const auto& g : groups) providers.emplace_back(g, nu_max, options);

  const OIrrep trivial = OIrrep::trivial(family.n);
  std::map<std::map<Rational, std::int64_t>, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < groups.size(); ++i)
    buckets[providers[i].spectrum(trivial, nu_max).entries].push_back(i);
  result.buckets = buckets.size();

  const auto taus = catalog(family.n, weight_bound);
  for (const auto& [spectrum, members] : buckets)
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        const auto& p = providers[members[x]];
        const auto& q = providers[members[y]];
        bool found = false;
        for (const auto& tau : taus) {
          if (auto m = compare_spectra(p.spectrum(tau, nu_max), q.spectrum(tau, nu_max))) {
            result.pairs.push_back({groups[members[x]], groups[members[y]], tau, *m});
            found = true;
            break;
          }
        }
        if (!found) ++result.indistinguishable_pairs;
      }
  return result;
}

}  // namespace flatspec
