#include "flatspec/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <thread>

#include "flatspec/lattice_enum.hpp"

namespace flatspec {

namespace {

constexpr double kIntegralityTolerance = 1e-6;

int leading(const OIrrep& tau) {
  const auto& c = tau.highest().coords();
  return c.empty() ? 0 : c.front();
}

// cos(2 pi r / m), exact at the quarter points.
long double unit_cos(std::int64_t r, std::int64_t m) {
  if (r == 0) return 1.0L;
  if (2 * r == m) return -1.0L;
  if (4 * r == m || 4 * r == 3 * m) return 0.0L;
  return std::cos(2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) / static_cast<long double>(m));
}

unsigned worker_count(unsigned requested, std::size_t work) {
  unsigned t = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(t, std::max<std::size_t>(work, 1)));
}

}  // namespace

std::int64_t SpectrumTable::at(const Rational& nu) const {
  auto it = entries.find(nu);
  return it == entries.end() ? 0 : it->second;
}

std::int64_t MultiplicityTable::zero(const OIrrep& tau) const {
  auto it = zero_part.find(tau);
  return it == zero_part.end() ? 0 : it->second;
}

std::int64_t MultiplicityTable::continuous(const OIrrep& sigma, const Rational& nu) const {
  auto it = continuous_part.find({sigma, nu});
  return it == continuous_part.end() ? 0 : it->second;
}

SpectrumOracle::SpectrumOracle(BieberbachGroup group, Rational nu_max, ComputeOptions options)
    : group_(std::move(group)), nu_max_(std::move(nu_max)), options_(options) {
  if (nu_max_ < 0) throw Error("nu_max must be nonnegative");
  if (auto report = validate(group_); !report.valid())
    throw GroupError(report.violations.front().kind,
                     "group '" + group_.name() + "' is not a Bieberbach group: " + report.violations.front().detail);

  const int n = group_.n();
  const auto& elements = group_.elements();
  const std::size_t ne = elements.size();

  // Translation a in units of 1/modulus, per element.
  std::vector<std::int64_t> modulus(ne, 1);
  std::vector<std::vector<std::int64_t>> scaled(ne);
  for (std::size_t e = 0; e < ne; ++e) {
    Integer m = 1;
    for (const auto& x : elements[e].translation) mpz_lcm(m.get_mpz_t(), m.get_mpz_t(), x.get_den_mpz_t());
    if (!m.fits_slong_p()) throw Error("translation denominators too large");
    modulus[e] = m.get_si();
    for (const auto& x : elements[e].translation) {
      Integer c = x.get_num() * (m / x.get_den());
      scaled[e].push_back(c.get_si());
    }
    classes_.push_back(OrthogonalElement::from_lattice(elements[e].rotation).conjugacy_class());
  }

  const auto points = enumerate_short_vectors(inverse(group_.gram()), nu_max_);

  // residue[p * ne + e] = <k, a_e> * modulus_e mod modulus_e, or -1 if B_e^T k != k.
  std::vector<std::int64_t> residue(points.size() * ne, -1);
  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t p = begin; p < end; ++p) {
      const IntVector& k = points[p].coeffs;
      for (std::size_t e = 0; e < ne; ++e) {
        const IntMatrix& b = elements[e].rotation;
        bool fixed = true;
        for (int i = 0; i < n && fixed; ++i) {
          std::int64_t s = 0;
          for (int j = 0; j < n; ++j) s += b(j, i) * k[static_cast<std::size_t>(j)];
          fixed = s == k[static_cast<std::size_t>(i)];
        }
        if (!fixed) continue;
        std::int64_t r = 0;
        for (int i = 0; i < n; ++i) r = (r + k[static_cast<std::size_t>(i)] % modulus[e] * scaled[e][static_cast<std::size_t>(i)]) % modulus[e];
        residue[p * ne + e] = (r + modulus[e]) % modulus[e];
      }
    }
  };
  const unsigned workers = worker_count(options_.threads, points.size());
  if (workers <= 1) {
    work(0, points.size());
  } else {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (points.size() + workers - 1) / workers;
    for (unsigned w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(points.size(), w * chunk);
      const std::size_t end = std::min(points.size(), begin + chunk);
      pool.emplace_back(work, begin, end);
    }
  }

  // Points are sorted by norm, so shells are contiguous.
  for (std::size_t p = 0; p < points.size();) {
    std::size_t q = p;
    while (q < points.size() && points[q].norm == points[p].norm) ++q;
    std::vector<std::vector<std::int64_t>> counts(ne);
    for (std::size_t e = 0; e < ne; ++e) counts[e].assign(static_cast<std::size_t>(modulus[e]), 0);
    for (std::size_t i = p; i < q; ++i)
      for (std::size_t e = 0; e < ne; ++e)
        if (auto r = residue[i * ne + e]; r >= 0) ++counts[e][static_cast<std::size_t>(r)];
    std::vector<double> sums(ne);
    for (std::size_t e = 0; e < ne; ++e) {
      long double s = 0;
      for (std::int64_t r = 0; r < modulus[e]; ++r)
        if (auto c = counts[e][static_cast<std::size_t>(r)]) s += static_cast<long double>(c) * unit_cos(r, modulus[e]);
      sums[e] = static_cast<double>(s);
    }
    norms_.push_back(points[p].norm);
    phase_sums_.push_back(std::move(sums));
    shell_sizes_[points[p].norm] = static_cast<std::int64_t>(q - p);
    p = q;
  }
}

SpectrumTable SpectrumOracle::spectrum(const OIrrep& tau, const Rational& nu_max) const {
  if (tau.n() != group_.n()) throw Error("representation is for O(" + std::to_string(tau.n()) + "), group has n = " +
                                         std::to_string(group_.n()));
  if (nu_max > nu_max_) throw CutoffError("requested nu_max " + to_string(nu_max) + " exceeds the precomputed " +
                                          to_string(nu_max_));
  std::vector<double> chi;
  for (const auto& cls : classes_) chi.push_back(character(tau, cls, options_.convention));
  const double order = static_cast<double>(group_.holonomy_order());

  SpectrumTable table{group_.name(), tau, nu_max, {}};
  table.entries[Rational(0)] = 0;
  for (std::size_t s = 0; s < norms_.size() && norms_[s] <= nu_max; ++s) {
    double total = 0;
    for (std::size_t e = 0; e < chi.size(); ++e) total += chi[e] * phase_sums_[s][e];
    total /= order;
    const double rounded = std::round(total);
    if (std::abs(total - rounded) > kIntegralityTolerance || rounded < 0)
      throw IntegralityError("multiplicity " + std::to_string(total) + " at nu = " + to_string(norms_[s]) + " for " +
                             to_string(tau) + " on " + group_.name() + " is not a nonnegative integer");
    const auto d = static_cast<std::int64_t>(rounded);
    if (d != 0 || norms_[s] == 0) table.entries[norms_[s]] = d;
  }
  return table;
}

SpectrumTable tau_spectrum_oracle(const BieberbachGroup& group, const OIrrep& tau, const Rational& nu_max,
                                  ComputeOptions options) {
  return SpectrumOracle(group, nu_max, options).spectrum(tau);
}

SpectrumTable tau_spectrum_from_multiplicities(const MultiplicityTable& mult, const OIrrep& tau,
                                               const Rational& nu_max, const std::string& group) {
  if (tau.n() != mult.n) throw Error("representation dimension does not match the multiplicity table");
  if (leading(tau) > mult.weight_bound)
    throw CutoffError(to_string(tau) + " lies beyond the weight bound " + std::to_string(mult.weight_bound));
  if (nu_max > mult.nu_max)
    throw CutoffError("nu_max " + to_string(nu_max) + " exceeds the table cutoff " + to_string(mult.nu_max));

  SpectrumTable table{group, tau, nu_max, {}};
  table.entries[Rational(0)] = mult.zero(tau);
  for (const auto& sigma : branch(tau, Embedding::M, mult.convention)) {
    for (auto it = mult.continuous_part.lower_bound({sigma, Rational(0)});
         it != mult.continuous_part.end() && it->first.first == sigma && it->first.second <= nu_max; ++it)
      table.entries[it->first.second] += it->second;
  }
  std::erase_if(table.entries, [](const auto& kv) { return kv.second == 0 && kv.first != 0; });
  return table;
}

std::optional<SpectrumMismatch> compare_spectra(const SpectrumTable& a, const SpectrumTable& b) {
  const Rational limit = std::min(a.nu_max, b.nu_max);
  std::vector<Rational> keys;
  for (const auto& [nu, d] : a.entries) keys.push_back(nu);
  for (const auto& [nu, d] : b.entries) keys.push_back(nu);
  std::sort(keys.begin(), keys.end());
  for (const auto& nu : keys) {
    if (nu > limit) break;
    if (a.at(nu) != b.at(nu)) return SpectrumMismatch{nu, a.at(nu), b.at(nu)};
  }
  return std::nullopt;
}

std::optional<SpectrumMismatch> are_tau_isospectral(const BieberbachGroup& g1, const BieberbachGroup& g2,
                                                    const OIrrep& tau, const Rational& nu_max,
                                                    ComputeOptions options) {
  if (g1.n() != g2.n()) throw Error("groups have different dimensions");
  return compare_spectra(tau_spectrum_oracle(g1, tau, nu_max, options), tau_spectrum_oracle(g2, tau, nu_max, options));
}

}  // namespace flatspec
