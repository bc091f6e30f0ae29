// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>

#include "flatspec/io.hpp"
#include "flatspec/reconstruct.hpp"
#include "flatspec/spectra.hpp"
#include "flatspec_cli/cli.hpp"
#include "oracles.hpp"

using namespace flatspec;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;
  void fail(const std::string& why) {
    if (ok) detail = why;
    ok = false;
  }
};

const Rational kNu{10};

std::vector<std::pair<BieberbachGroup, BieberbachGroup>> preset_pairs() {
  const auto all = presets();
  std::vector<std::pair<BieberbachGroup, BieberbachGroup>> out;
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j)
      if (all[i].n() == all[j].n()) out.emplace_back(all[i], all[j]);
  return out;
}

Outcome branching() {
  Outcome o;
  for (int n = 2; n <= 7; ++n)
    for (const auto& tau : catalog(n, 4))
      for (auto emb : {Embedding::Standard, Embedding::M}) {
        const auto b = branch(tau, emb);
        std::int64_t total = 0;
        for (const auto& s : b) total += dim(s);
        if (total != dim(tau)) o.fail("dimension sum for " + to_string(tau));
        if (std::set<OIrrep>(b.begin(), b.end()).size() != b.size()) o.fail("repeated constituent in " + to_string(tau));
      }
  return o;
}

Outcome integrality() {
  Outcome o;
  std::size_t tables = 0;
  for (const auto& g : presets()) {
    try {
      const SpectrumOracle oracle(g, kNu, {Convention::A, 0});
      for (const auto& tau : catalog(g.n(), 3)) {
        for (const auto& [nu, d] : oracle.spectrum(tau).entries)
          if (d < 0) o.fail(g.name() + " " + to_string(tau) + ": negative multiplicity");
        ++tables;
      }
    } catch (const IntegralityError& e) {
      o.fail(g.name() + ": " + e.what());
    }
  }
  o.detail = o.ok ? std::to_string(presets().size()) + " presets, " + std::to_string(tables) + " tables" : o.detail;
  return o;
}

Outcome torus_closed_form() {
  Outcome o;
  for (const auto& name : {"torus-Z2", "torus-rect2", "torus-skew2", "torus-rect3", "torus-skew3", "torus-skew4"}) {
    const auto g = find_preset(name);
    const auto counts = oracle::box_counts(inverse(g.gram()), kNu);
    const SpectrumOracle oracle(g, kNu, {Convention::A, 0});
    for (const auto& tau : catalog(g.n(), 3)) {
      std::map<Rational, std::int64_t> expected;
      for (const auto& [nu, c] : counts) expected[nu] = dim(tau) * c;
      if (oracle.spectrum(tau).entries != expected) o.fail(std::string(name) + " " + to_string(tau));
    }
  }
  const auto k = tau_spectrum_oracle(find_preset("klein-bottle"), OIrrep::trivial(2), Rational(1));
  if (k.at(0) != 1 || k.at(1) != 1) o.fail("klein-bottle trivial bundle");
  return o;
}

Outcome round_trip() {
  Outcome o;
  for (const auto& g : presets()) {
    try {
      const OracleProvider provider(g, kNu, {Convention::A, 0});
      const auto table = reconstruct_multiplicities(provider, 3, kNu);
      if (auto f = check_round_trip(provider, table)) o.fail(g.name() + ": " + to_string(f->tau));
    } catch (const ReconstructionError& e) {
      o.fail(g.name() + ": " + e.what());
    }
  }
  return o;
}

MultiplicityTable random_table(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> n_dist(2, 5), count(0, 4), nu(1, 24);
  MultiplicityTable m;
  m.n = n_dist(rng);
  m.weight_bound = 2;
  m.nu_max = Rational(6);
  m.convention = rng() % 2 == 0 ? Convention::A : Convention::B;
  for (const auto& tau : catalog(m.n, 2))
    if (int c = count(rng); c > 0) m.zero_part[tau] = c;
  for (const auto& sigma : catalog(m.n - 1, 2))
    for (int k = 0; k < 3; ++k)
      if (int c = count(rng); c > 0) m.continuous_part[{sigma, Rational(nu(rng), 4)}] += c;
  return m;
}

Outcome isospectrality_consistency() {
  Outcome o;
  std::size_t pairs = 0;
  for (const auto& [a, b] : preset_pairs()) {
    const auto r = strong_isospectrality_report(a, b, 3, kNu, {Convention::A, 0});
    if (!r.consistent()) o.fail(a.name() + " vs " + b.name());
    ++pairs;
  }
  std::mt19937_64 rng(2024);
  constexpr int kTables = 150;
  for (int i = 0; i < kTables; ++i) {
    const auto m = random_table(rng);
    const MultiplicityTable copy = m;
    const TableProvider provider(m);
    const auto rebuilt = reconstruct_multiplicities(provider, m.weight_bound, m.nu_max);
    if (compare_multiplicities(m, rebuilt)) o.fail("synthetic table " + std::to_string(i) + " not recovered");
    for (const auto& tau : catalog(m.n, m.weight_bound))
      if (tau_spectrum_from_multiplicities(m, tau, m.nu_max) != tau_spectrum_from_multiplicities(copy, tau, m.nu_max) ||
          tau_spectrum_from_multiplicities(rebuilt, tau, m.nu_max).entries !=
              tau_spectrum_from_multiplicities(m, tau, m.nu_max).entries)
        o.fail("synthetic table " + std::to_string(i) + " regenerates differently");
  }
  if (o.ok) o.detail = std::to_string(pairs) + " preset pairs, " + std::to_string(kTables) + " synthetic tables";
  return o;
}

Outcome convention_invariance() {
  Outcome o;
  for (const auto& g : presets()) {
    const SpectrumOracle a(g, kNu, {Convention::A, 0});
    const SpectrumOracle b(g, kNu, {Convention::B, 0});
    for (const auto& tau : catalog(g.n(), 3)) {
      auto sa = a.spectrum(tau);
      auto sb = b.spectrum(relabel(tau, Convention::A, Convention::B));
      if (sa.entries != sb.entries) o.fail(g.name() + " " + to_string(tau) + ": spectra differ");
    }
    const OracleProvider pa(g, kNu, {Convention::A, 0});
    const OracleProvider pb(g, kNu, {Convention::B, 0});
    const bool ra = !check_round_trip(pa, reconstruct_multiplicities(pa, 3, kNu));
    const bool rb = !check_round_trip(pb, reconstruct_multiplicities(pb, 3, kNu));
    if (!ra || !rb) o.fail(g.name() + ": round trip differs");
  }
  for (const auto& [g1, g2] : preset_pairs()) {
    const auto ra = strong_isospectrality_report(g1, g2, 2, Rational(6), {Convention::A, 0});
    const auto rb = strong_isospectrality_report(g1, g2, 2, Rational(6), {Convention::B, 0});
    if (ra.all_isospectral() != rb.all_isospectral() || ra.equivalent() != rb.equivalent())
      o.fail(g1.name() + " vs " + g2.name() + ": verdicts differ");
    for (const auto& va : ra.verdicts) {
      const auto tb = relabel(va.tau, Convention::A, Convention::B);
      bool found = false;
      for (const auto& vb : rb.verdicts)
        if (vb.tau == tb) {
          found = true;
          const bool same = va.mismatch.has_value() == vb.mismatch.has_value() &&
                            (!va.mismatch || (va.mismatch->nu == vb.mismatch->nu &&
                                              va.mismatch->first == vb.mismatch->first &&
                                              va.mismatch->second == vb.mismatch->second));
          if (!same) o.fail(g1.name() + " vs " + g2.name() + " " + to_string(va.tau));
        }
      if (!found) o.fail("no relabeled verdict for " + to_string(va.tau));
    }
  }
  return o;
}

Outcome isometry_invariance() {
  Outcome o;
  std::mt19937_64 rng(99);
  const auto all = presets();
  for (int trial = 0; trial < 5; ++trial) {
    const auto& g = all[rng() % all.size()];
    const auto q = oracle::random_rational_orthogonal(g.n(), rng, trial % 2 == 1);
    RatVector t(static_cast<std::size_t>(g.n()));
    for (auto& x : t) x = Rational(static_cast<long>(rng() % 11) - 5, 6);
    const auto c = conjugate(g, q, t);
    IntMatrix u = IntMatrix::identity(g.n());
    if (g.n() > 1) u(0, g.n() - 1) = static_cast<std::int64_t>(rng() % 3) + 1;
    const auto moved = change_basis(c, u);
    const SpectrumOracle base(g, kNu, {Convention::A, 0});
    const SpectrumOracle oc(c, kNu, {Convention::A, 0});
    const SpectrumOracle om(moved, kNu, {Convention::A, 0});
    for (const auto& tau : catalog(g.n(), 3))
      if (base.spectrum(tau) != oc.spectrum(tau) || base.spectrum(tau) != om.spectrum(tau))
        o.fail(g.name() + " " + to_string(tau));
    o.detail += (o.detail.empty() ? "" : ", ") + g.name();
  }
  return o;
}

std::string cli_output(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return std::to_string(code) + "\n" + out.str();
}

Outcome determinism() {
  Outcome o;
  const std::vector<std::vector<std::string>> commands{
      {"spectrum", "hantzsche-wendt", "--tau", "2:1", "--nu-max", "10"},
      {"spectrum", "diag4-z2xz2", "--tau", "1,0:-1", "--nu-max", "10", "--format", "json"},
      {"compare", "dicosm", "amphicosm", "--weight-bound", "3", "--nu-max", "10"},
      {"compare", "torus-Z2", "torus-rect2", "--weight-bound", "2", "--nu-max", "6", "--format", "json"},
  };
  for (const auto& cmd : commands) {
    std::set<std::string> seen;
    for (const char* threads : {"1", "4", "1", "4"}) {
      auto args = cmd;
      args.insert(args.begin(), {"--threads", threads});
      seen.insert(cli_output(args));
    }
    if (seen.size() != 1) o.fail(cmd[0] + " " + cmd[1] + ": outputs differ");
  }
  return o;
}

}  // namespace

int main() {
  struct Criterion {
    const char* title;
    std::function<Outcome()> check;
    double time_limit;  // seconds; 0 = none
  };
  const std::vector<Criterion> criteria{
      {"branching dimension sums and multiplicity freeness (n<=7, a1<=4)", branching, 10},
      {"oracle integrality on presets (a1<=3, nu<=10)", integrality, 120},
      {"torus closed form and Klein bottle values", torus_closed_form, 0},
      {"reconstruction round trip on presets (W=3, nu=10)", round_trip, 300},
      {"isospectrality/equivalence consistency", isospectrality_consistency, 0},
      {"convention invariance", convention_invariance, 0},
      {"isometry invariance", isometry_invariance, 0},
      {"determinism across runs and thread counts", determinism, 0},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].check();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (criteria[i].time_limit > 0 && secs > criteria[i].time_limit) o.fail("over the time limit");
    std::printf("%s criterion %zu: %s (%.2f s)%s%s\n", o.ok ? "PASS" : "FAIL", i + 1, criteria[i].title, secs,
                o.detail.empty() ? "" : " - ", o.detail.c_str());
    std::fflush(stdout);
    if (!o.ok) ++failures;
  }
  return failures == 0 ? 0 : 1;
}
