#include "flatspec_cli/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "flatspec/bieberbach.hpp"
#include "flatspec/family.hpp"
#include "flatspec/io.hpp"
#include "flatspec/reconstruct.hpp"
#include "flatspec/spectra.hpp"

namespace flatspec::cli {

namespace {

constexpr int kEquivalent = 0;
constexpr int kDistinguished = 1;
constexpr int kFailure = 2;

struct Globals {
  unsigned threads = 1;
  std::string convention = "A";
  std::string manifest_path;
  std::string output_path;
};

class Session {
 public:
  Session(const Globals& g, std::ostream& out) : globals_(g), stdout_(out) {
    options_.threads = g.threads;
    options_.convention = parse_convention(g.convention);
    if (!g.manifest_path.empty()) {
      std::ifstream in(g.manifest_path);
      if (!in) throw Error("cannot read manifest '" + g.manifest_path + "'");
      std::stringstream ss;
      ss << in.rdbuf();
      manifest_ = parse_manifest(ss.str());
    }
  }

  const ComputeOptions& options() const { return options_; }
  const std::optional<Manifest>& manifest() const { return manifest_; }

  BieberbachGroup group(const std::string& name) const {
    if (manifest_)
      for (const auto& g : manifest_->groups)
        if (g.name() == name) return g;
    return find_preset(name);
  }

  /// Manifest file hash, or the hash of the canonical description of the
  /// groups used when they come from the built-in presets.
  std::string hash(const std::vector<BieberbachGroup>& used) const {
    if (manifest_) return manifest_->hash;
    return hash_hex(fnv1a(serialize_manifest(used)));
  }

  void emit(const std::string& text) const {
    if (globals_.output_path.empty()) {
      stdout_ << text;
      return;
    }
    std::ofstream f(globals_.output_path, std::ios::binary);
    if (!f) throw Error("cannot write '" + globals_.output_path + "'");
    f << text;
  }

 private:
  const Globals& globals_;
  std::ostream& stdout_;
  ComputeOptions options_;
  std::optional<Manifest> manifest_;
};

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, sep);) out.push_back(item);
  return out;
}

// "1,0,0;0,0,-1;0,1,0" -> rational rows.
RatMatrix parse_matrix(const std::string& text) {
  const auto rows = split(text, ';');
  const int n = static_cast<int>(rows.size());
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    const auto cells = split(rows[static_cast<std::size_t>(i)], ',');
    if (static_cast<int>(cells.size()) != n) throw Error("matrix must be square (rows separated by ';')");
    for (int j = 0; j < n; ++j) m(i, j) = parse_rational(cells[static_cast<std::size_t>(j)]);
  }
  return m;
}

std::string irrep_line(const OIrrep& tau) {
  std::ostringstream s;
  s << std::left << std::setw(16) << to_string(tau) << " dim " << dim(tau);
  return s.str();
}

int cmd_catalog(const Session& session, int n, int bound) {
  std::string text;
  for (const auto& tau : catalog(n, bound)) text += irrep_line(tau) + "\n";
  session.emit(text);
  return kEquivalent;
}

int cmd_branch(const Session& session, int n, const std::string& spec) {
  const OIrrep tau = parse_irrep(n, spec);
  std::string text = "O(" + std::to_string(n) + ") " + irrep_line(tau) + "\n";
  for (auto [embedding, title] : {std::pair{Embedding::Standard, "standard"}, std::pair{Embedding::M, "M"}}) {
    text += std::string(title) + ":\n";
    for (const auto& sigma : branch(tau, embedding, session.options().convention))
      text += "  O(" + std::to_string(n - 1) + ") " + irrep_line(sigma) + "\n";
  }
  session.emit(text);
  return kEquivalent;
}

int cmd_character(const Session& session, int n, const std::string& spec, const std::string& matrix) {
  const OIrrep tau = parse_irrep(n, spec);
  const RatMatrix b = parse_matrix(matrix);
  if (b.rows() != n) throw Error("matrix size does not match n");
  if (b.transpose() * b != RatMatrix::identity(n)) throw Error("matrix is not orthogonal");
  Eigen::MatrixXd m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = b(i, j).get_d();
  const OrthogonalElement element(m);
  const double chi = character(tau, element.conjugacy_class(), session.options().convention);
  std::ostringstream s;
  s << "chi[" << to_string(tau) << "] = " << std::setprecision(12) << (std::abs(chi) < 1e-12 ? 0.0 : chi)
    << " (order " << element.order() << ", det " << element.det() << ")\n";
  session.emit(s.str());
  return kEquivalent;
}

int cmd_spectrum(const Session& session, const std::string& name, const std::string& spec, const std::string& nu_text,
                 const std::string& format) {
  const auto group = session.group(name);
  const OIrrep tau = parse_irrep(group.n(), spec);
  const auto table = tau_spectrum_oracle(group, tau, parse_rational(nu_text), session.options());
  const Provenance prov{session.hash({group}), "spectrum"};
  session.emit(format == "json" ? spectrum_json(table, prov) : spectrum_csv(table, prov));
  return kEquivalent;
}

int cmd_reconstruct(const Session& session, const std::string& name, int bound, const std::string& nu_text) {
  const auto group = session.group(name);
  const Rational nu_max = parse_rational(nu_text);
  const OracleProvider provider(group, nu_max, session.options());
  const auto table = reconstruct_multiplicities(provider, bound, nu_max);
  const auto failure = check_round_trip(provider, table);
  session.emit(multiplicity_json(table, {session.hash({group}), "reconstruct"}, failure));
  return failure ? kFailure : kEquivalent;
}

int cmd_compare(const Session& session, const std::string& a, const std::string& b, int bound,
                const std::string& nu_text, const std::string& format) {
  const auto g1 = session.group(a);
  const auto g2 = session.group(b);
  const auto report = strong_isospectrality_report(g1, g2, bound, parse_rational(nu_text), session.options());
  const Provenance prov{session.hash({g1, g2}), "compare"};
  session.emit(format == "json" ? report_json(report, prov) : report_text(report, prov));
  if (!report.consistent()) return kFailure;
  return report.all_isospectral() && report.equivalent() ? kEquivalent : kDistinguished;
}

int cmd_validate(const Session& session, const std::string& name) {
  const auto group = session.group(name);
  const auto report = validate(group);
  session.emit(validation_json(group.name(), report));
  return report.valid() ? kEquivalent : kDistinguished;
}

int cmd_presets(const Session& session, bool dump) {
  const auto all = presets();
  if (dump) {
    session.emit(serialize_manifest(all));
    return kEquivalent;
  }
  std::ostringstream s;
  for (const auto& g : all)
    s << std::left << std::setw(16) << g.name() << " n=" << g.n() << " |F|=" << g.holonomy_order()
      << (validate(g).valid() ? " valid" : " INVALID") << "\n";
  session.emit(s.str());
  return kEquivalent;
}

struct SearchArgs {
  int n = 3;
  int max_holonomy = 4;
  std::string scales = "1";
  int bound = 2;
  std::string nu_max = "4";
  std::size_t cap = 200'000;
  std::string emit_manifest;
};

int cmd_search(const Session& session, const SearchArgs& a) {
  DiagonalFamily family;
  family.n = a.n;
  family.max_holonomy = a.max_holonomy;
  family.lattice_scales.clear();
  for (const auto& s : split(a.scales, ',')) family.lattice_scales.push_back(parse_rational(s));
  family.max_candidates = a.cap;
  const Rational nu_max = parse_rational(a.nu_max);
  const auto result = search_distinguishing_pairs(family, a.bound, nu_max, session.options());

  std::ostringstream s;
  s << "search n=" << a.n << " max holonomy " << a.max_holonomy << " scales " << a.scales << "\n";
  s << "cutoffs: weight bound " << a.bound << ", nu_max " << to_string(nu_max) << ", convention "
    << to_string(session.options().convention) << "\n";
  s << "groups: " << result.groups << ", trivial-spectrum buckets: " << result.buckets
    << ", isospectral pairs not separated: " << result.indistinguishable_pairs << "\n";
  s << "distinguishing pairs: " << result.pairs.size() << "\n";
  std::vector<BieberbachGroup> involved;
  std::vector<Job> jobs;
  for (const auto& p : result.pairs) {
    s << "  " << p.first.name() << " | " << p.second.name() << " : tau " << to_string(p.tau) << " at nu "
      << to_string(p.mismatch.nu) << " (" << p.mismatch.first << " vs " << p.mismatch.second << ")\n";
    for (const auto* g : {&p.first, &p.second})
      if (std::none_of(involved.begin(), involved.end(), [&](const auto& x) { return x.name() == g->name(); }))
        involved.push_back(*g);
    jobs.push_back({"compare", {p.first.name(), p.second.name()}, "trivial", nu_max, a.bound});
  }
  if (!a.emit_manifest.empty()) {
    std::ofstream f(a.emit_manifest, std::ios::binary);
    if (!f) throw Error("cannot write '" + a.emit_manifest + "'");
    f << serialize_manifest(involved, jobs);
  }
  session.emit(s.str());
  return kEquivalent;
}

int cmd_run(const Session& session) {
  if (!session.manifest()) throw Error("run needs --manifest");
  int worst = kEquivalent;
  for (const auto& job : session.manifest()->jobs) {
    int code = kEquivalent;
    if (job.command == "spectrum")
      code = cmd_spectrum(session, job.groups[0], job.tau, to_string(job.nu_max), "csv");
    else if (job.command == "reconstruct")
      code = cmd_reconstruct(session, job.groups[0], job.weight_bound, to_string(job.nu_max));
    else if (job.command == "compare")
      code = cmd_compare(session, job.groups[0], job.groups[1], job.weight_bound, to_string(job.nu_max), "text");
    else
      code = cmd_validate(session, job.groups[0]);
    worst = std::max(worst, code);
  }
  return worst;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"flatspec: twisted Laplacian spectra of compact flat manifolds"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals globals;
  app.add_option("--threads", globals.threads, "Worker threads for lattice enumeration (0 = all cores)");
  app.add_option("--convention", globals.convention, "Sign convention for O(2m) labels")
      ->check(CLI::IsMember({"A", "B"}));
  app.add_option("--manifest", globals.manifest_path, "JSON manifest with group definitions and jobs");
  app.add_option("-o,--output", globals.output_path, "Write the result here instead of stdout");

  int n = 3, bound = 1, weight_bound = 3;
  std::string tau = "trivial", nu_max = "10", format = "csv", matrix;
  std::vector<std::string> names;

  auto* catalog_cmd = app.add_subcommand("catalog", "List irreducibles of O(n) with a_1 <= bound");
  catalog_cmd->add_option("--n", n)->required();
  catalog_cmd->add_option("--bound", bound)->required();

  std::string irrep;
  auto* branch_cmd = app.add_subcommand("branch", "Restriction of an O(n) irreducible to O(n-1)");
  branch_cmd->add_option("--n", n)->required();
  branch_cmd->add_option("tau", irrep, "e.g. 2:1, 1,1:0, trivial, det")->required();

  auto* character_cmd = app.add_subcommand("character", "Character value at an orthogonal matrix");
  character_cmd->add_option("--n", n)->required();
  character_cmd->add_option("tau", irrep)->required();
  character_cmd->add_option("--matrix", matrix, "rows separated by ';', entries rational")->required();

  auto* spectrum_cmd = app.add_subcommand("spectrum", "tau-spectrum of a group");
  spectrum_cmd->add_option("group", names)->expected(1)->required();
  spectrum_cmd->add_option("--tau", tau);
  spectrum_cmd->add_option("--nu-max", nu_max);
  spectrum_cmd->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));

  auto* reconstruct_cmd = app.add_subcommand("reconstruct", "Multiplicities n(pi) recovered from tau-spectra");
  reconstruct_cmd->add_option("group", names)->expected(1)->required();
  reconstruct_cmd->add_option("--weight-bound", weight_bound);
  reconstruct_cmd->add_option("--nu-max", nu_max);

  std::string compare_format = "text";
  auto* compare_cmd = app.add_subcommand("compare", "Strong isospectrality report for two groups");
  compare_cmd->add_option("groups", names)->expected(2)->required();
  compare_cmd->add_option("--weight-bound", weight_bound);
  compare_cmd->add_option("--nu-max", nu_max);
  compare_cmd->add_option("--format", compare_format)->check(CLI::IsMember({"text", "json"}));

  SearchArgs search;
  auto* search_cmd = app.add_subcommand("search", "Look for pairs separated only by twisted spectra");
  search_cmd->add_option("--n", search.n);
  search_cmd->add_option("--max-holonomy", search.max_holonomy)->check(CLI::IsMember({1, 2, 4}));
  search_cmd->add_option("--scales", search.scales, "Comma-separated diagonal lattice scales");
  search_cmd->add_option("--weight-bound", search.bound);
  search_cmd->add_option("--nu-max", search.nu_max);
  search_cmd->add_option("--cap", search.cap, "Maximum number of generator sets examined");
  search_cmd->add_option("--emit-manifest", search.emit_manifest, "Write the reported groups and compare jobs here");

  bool dump = false;
  auto* presets_cmd = app.add_subcommand("presets", "List the built-in groups");
  presets_cmd->add_flag("--dump", dump, "Print them as a manifest");

  auto* validate_cmd = app.add_subcommand("validate", "Check the Bieberbach group axioms");
  validate_cmd->add_option("group", names)->expected(1)->required();

  auto* run_cmd = app.add_subcommand("run", "Execute the jobs listed in the manifest");

  std::vector<std::string> storage{"flatspec"};
  storage.insert(storage.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& s : storage) argv.push_back(s.data());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kFailure;
  }

  const char* cache_dir = std::getenv("FLATSPEC_CACHE");
  if (cache_dir && *cache_dir) load_weight_cache(cache_dir);

  int code = kFailure;
  try {
    const Session session(globals, out);
    if (*catalog_cmd) code = cmd_catalog(session, n, bound);
    else if (*branch_cmd) code = cmd_branch(session, n, irrep);
    else if (*character_cmd) code = cmd_character(session, n, irrep, matrix);
    else if (*spectrum_cmd) code = cmd_spectrum(session, names.at(0), tau, nu_max, format);
    else if (*reconstruct_cmd) code = cmd_reconstruct(session, names.at(0), weight_bound, nu_max);
    else if (*compare_cmd) code = cmd_compare(session, names.at(0), names.at(1), weight_bound, nu_max, compare_format);
    else if (*search_cmd) code = cmd_search(session, search);
    else if (*presets_cmd) code = cmd_presets(session, dump);
    else if (*validate_cmd) code = cmd_validate(session, names.at(0));
    else if (*run_cmd) code = cmd_run(session);
  } catch (const GroupError& e) {
    err << "error: invalid group (" << to_string(e.kind()) << "): " << e.what() << "\n";
    code = kFailure;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    code = kFailure;
  }

  if (cache_dir && *cache_dir) save_weight_cache(cache_dir);
  return code;
}

}  // namespace flatspec::cli
