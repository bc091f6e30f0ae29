#include "flatspec/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include "json.hpp"
#include "flatspec/weyl.hpp"

namespace flatspec {

using Json = nlohmann::ordered_json;

namespace {

Rational rational_from(const Json& v, const std::string& where) {
  if (v.is_string()) {
    try {
      return parse_rational(v.get<std::string>());
    } catch (const Error& e) {
      throw ManifestError(where + ": " + e.what());
    }
  }
  if (v.is_number_integer()) return Rational(v.get<long>());
  throw ManifestError(where + ": expected an integer or a rational string such as \"1/2\"");
}

std::vector<Rational> rational_array(const Json& v, std::size_t size, const std::string& where) {
  if (!v.is_array() || v.size() != size)
    throw ManifestError(where + ": expected an array of " + std::to_string(size) + " entries");
  std::vector<Rational> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back(rational_from(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

RatMatrix rational_rows(const Json& v, int n, const std::string& where) {
  if (!v.is_array() || static_cast<int>(v.size()) != n)
    throw ManifestError(where + ": expected " + std::to_string(n) + " rows");
  RatMatrix m(n, n);
  for (int i = 0; i < n; ++i) {
    auto row = rational_array(v[static_cast<std::size_t>(i)], static_cast<std::size_t>(n), where);
    for (int j = 0; j < n; ++j) m(i, j) = row[static_cast<std::size_t>(j)];
  }
  return m;
}

const Json& require(const Json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw ManifestError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

BieberbachGroup parse_group(const Json& g, std::size_t index) {
  std::string where = "groups[" + std::to_string(index) + "]";
  if (!g.is_object()) throw ManifestError(where + ": expected an object");
  const std::string name = require(g, "name", where).get<std::string>();
  where += " '" + name + "'";
  const Json& nv = require(g, "n", where);
  if (!nv.is_number_integer() || nv.get<int>() < 1 || nv.get<int>() > 8)
    throw ManifestError(where + ": n must be an integer between 1 and 8");
  const int n = nv.get<int>();

  // Basis vectors are listed one per entry; they become the columns of P.
  const RatMatrix basis = rational_rows(require(g, "basis", where), n, where + ".basis").transpose();
  if (determinant(basis) == 0) throw GroupError(ViolationKind::Malformed, where + ": lattice basis is singular");

  const std::string coords = g.value("coordinates", std::string("lattice"));
  if (coords != "lattice" && coords != "ambient")
    throw ManifestError(where + ": coordinates must be \"lattice\" or \"ambient\"");

  std::vector<AffineElement> gens;
  const Json empty = Json::array();
  const Json& list = g.contains("generators") ? g.at("generators") : empty;
  if (!list.is_array()) throw ManifestError(where + ": generators must be an array");
  for (std::size_t k = 0; k < list.size(); ++k) {
    const std::string gw = where + ".generators[" + std::to_string(k) + "]";
    const RatMatrix m = rational_rows(require(list[k], "matrix", gw), n, gw + ".matrix");
    const RatVector b = rational_array(require(list[k], "translation", gw), static_cast<std::size_t>(n), gw + ".translation");
    if (coords == "lattice") {
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
          if (m(i, j).get_den() != 1)
            throw GroupError(ViolationKind::NonCrystallographic, gw + ": lattice-coordinate matrix must be integral");
      const IntMatrix rot = to_integer(m);
      gens.push_back({rot, affine_translation(rot, b)});
    } else {
      const IntMatrix rot = lattice_rotation(basis, m);
      gens.push_back({rot, lattice_translation(basis, m.apply(b))});
    }
  }
  return BieberbachGroup::from_generators(name, basis, gens);
}

Job parse_job(const Json& j, std::size_t index) {
  const std::string where = "jobs[" + std::to_string(index) + "]";
  if (!j.is_object()) throw ManifestError(where + ": expected an object");
  Job job;
  job.command = require(j, "command", where).get<std::string>();
  static const std::set<std::string> known{"spectrum", "reconstruct", "compare", "validate"};
  if (!known.contains(job.command)) throw ManifestError(where + ": unknown command '" + job.command + "'");
  if (j.contains("group")) job.groups.push_back(j.at("group").get<std::string>());
  if (j.contains("groups"))
    for (const auto& g : j.at("groups")) job.groups.push_back(g.get<std::string>());
  const std::size_t wanted = job.command == "compare" ? 2 : 1;
  if (job.groups.size() != wanted)
    throw ManifestError(where + ": '" + job.command + "' needs " + std::to_string(wanted) + " group(s)");
  if (j.contains("tau")) job.tau = j.at("tau").get<std::string>();
  if (j.contains("nu_max")) job.nu_max = rational_from(j.at("nu_max"), where + ".nu_max");
  if (j.contains("weight_bound")) job.weight_bound = j.at("weight_bound").get<int>();
  return job;
}

Json irrep_json(const OIrrep& tau) {
  return Json{{"n", tau.n()}, {"weight", tau.highest().coords()}, {"delta", tau.delta()}};
}

Json motion_json(const MotionRep& pi) {
  if (const auto* t = std::get_if<TauTilde>(&pi)) return Json{{"type", "tau"}, {"tau", irrep_json(t->tau)}};
  const auto& p = std::get<PiSigmaR>(pi);
  return Json{{"type", "pi"}, {"sigma", irrep_json(p.sigma)}, {"nu", to_string(p.nu)}};
}

Json provenance_json(const Provenance& p) {
  return Json{{"command", p.command}, {"manifest_hash", p.manifest_hash}};
}

std::string lambda_text(const Rational& nu) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10f", 4.0 * std::numbers::pi * std::numbers::pi * nu.get_d());
  return buf;
}

std::string label(const OIrrep& tau) { return "O(" + std::to_string(tau.n()) + ") " + to_string(tau); }

std::string cache_file(const std::string& directory) {
  return (std::filesystem::path(directory) / "weight-multisets-v1.json").string();
}

}  // namespace

const BieberbachGroup& Manifest::group(const std::string& name) const {
  for (const auto& g : groups)
    if (g.name() == name) return g;
  throw ManifestError("manifest has no group named '" + name + "'");
}

Manifest parse_manifest(std::string_view text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ManifestError(std::string("manifest is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) throw ManifestError("manifest must be a JSON object");
  Manifest m;
  m.version = require(root, "version", "manifest").get<std::string>();
  if (m.version != kManifestVersion)
    throw ManifestError("unsupported manifest version '" + m.version + "' (expected " + std::string(kManifestVersion) + ")");
  const Json& groups = require(root, "groups", "manifest");
  if (!groups.is_array()) throw ManifestError("manifest: groups must be an array");
  std::set<std::string> names;
  for (std::size_t i = 0; i < groups.size(); ++i) {
    m.groups.push_back(parse_group(groups[i], i));
    if (!names.insert(m.groups.back().name()).second)
      throw ManifestError("duplicate group name '" + m.groups.back().name() + "'");
  }
  if (root.contains("jobs")) {
    for (std::size_t i = 0; i < root.at("jobs").size(); ++i) {
      m.jobs.push_back(parse_job(root.at("jobs")[i], i));
      for (const auto& g : m.jobs.back().groups)
        if (!names.contains(g)) throw ManifestError("jobs[" + std::to_string(i) + "]: unknown group '" + g + "'");
    }
  }
  m.hash = hash_hex(fnv1a(text));
  return m;
}

std::string serialize_manifest(const std::vector<BieberbachGroup>& groups, const std::vector<Job>& jobs) {
  Json root{{"version", kManifestVersion}, {"groups", Json::array()}};
  for (const auto& g : groups) {
    const int n = g.n();
    Json basis = Json::array();
    for (int j = 0; j < n; ++j) {
      Json v = Json::array();
      for (int i = 0; i < n; ++i) v.push_back(to_string(g.basis()(i, j)));
      basis.push_back(v);
    }
    Json gens = Json::array();
    for (const auto& e : g.elements()) {
      if (is_identity(e.rotation)) continue;
      Json rows = Json::array();
      for (int i = 0; i < n; ++i) {
        Json r = Json::array();
        for (int j = 0; j < n; ++j) r.push_back(e.rotation(i, j));
        rows.push_back(r);
      }
      Json t = Json::array();
      for (const auto& x : reduce_mod_one(rotated_translation(e.rotation, e.translation))) t.push_back(to_string(x));
      gens.push_back(Json{{"matrix", rows}, {"translation", t}});
    }
    root["groups"].push_back(Json{{"name", g.name()}, {"n", n}, {"basis", basis}, {"coordinates", "lattice"},
                                  {"generators", gens}});
  }
  if (!jobs.empty()) {
    Json js = Json::array();
    for (const auto& j : jobs) {
      Json o{{"command", j.command}};
      if (j.groups.size() == 1) o["group"] = j.groups.front();
      else o["groups"] = j.groups;
      o["tau"] = j.tau;
      o["nu_max"] = to_string(j.nu_max);
      o["weight_bound"] = j.weight_bound;
      js.push_back(o);
    }
    root["jobs"] = js;
  }
  return root.dump(2) + "\n";
}

std::uint64_t fnv1a(std::string_view data) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : data) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hash_hex(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

OIrrep parse_irrep(int n, std::string_view spec) {
  if (spec == "trivial") return OIrrep::trivial(n);
  if (spec == "det") return OIrrep::determinant(n);
  const auto colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw Error("representation '" + std::string(spec) + "' must look like 'a1,...,am:delta', 'trivial' or 'det'");
  std::vector<int> coords;
  const std::string weight(spec.substr(0, colon));
  std::string delta_text(spec.substr(colon + 1));
  if (!delta_text.empty() && delta_text.front() == '+') delta_text.erase(0, 1);
  std::stringstream ss(weight);
  for (std::string item; std::getline(ss, item, ',');) {
    try {
      std::size_t used = 0;
      coords.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error("bad weight coordinate '" + item + "' in '" + std::string(spec) + "'");
    }
  }
  if (delta_text != "1" && delta_text != "-1" && delta_text != "0")
    throw Error("delta must be 1, -1 or 0 in '" + std::string(spec) + "'");
  return OIrrep::make(n, coords, std::stoi(delta_text));
}

Convention parse_convention(std::string_view text) {
  if (text == "A" || text == "a") return Convention::A;
  if (text == "B" || text == "b") return Convention::B;
  throw Error("convention must be A or B");
}

std::string to_string(Convention c) { return c == Convention::A ? "A" : "B"; }

std::string spectrum_csv(const SpectrumTable& table, const Provenance& provenance) {
  std::string out;
  out += "# command: " + provenance.command + "\n";
  out += "# group: " + table.group + "\n";
  out += "# tau: " + label(table.tau) + "\n";
  out += "# nu_max: " + to_string(table.nu_max) + "\n";
  out += "# manifest_hash: " + provenance.manifest_hash + "\n";
  out += "nu_num,nu_den,lambda_float,multiplicity\n";
  for (const auto& [nu, d] : table.entries)
    out += nu.get_num().get_str() + "," + nu.get_den().get_str() + "," + lambda_text(nu) + "," + std::to_string(d) + "\n";
  return out;
}

std::string spectrum_json(const SpectrumTable& table, const Provenance& provenance) {
  Json rows = Json::array();
  for (const auto& [nu, d] : table.entries)
    rows.push_back(Json{{"nu", to_string(nu)}, {"lambda", lambda_text(nu)}, {"multiplicity", d}});
  Json root{{"provenance", provenance_json(provenance)},
            {"group", table.group},
            {"tau", irrep_json(table.tau)},
            {"nu_max", to_string(table.nu_max)},
            {"entries", rows}};
  return root.dump(2) + "\n";
}

std::string multiplicity_json(const MultiplicityTable& table, const Provenance& provenance,
                              const std::optional<RoundTripFailure>& round_trip) {
  Json zero = Json::array();
  for (const auto& [tau, v] : table.zero_part)
    if (v != 0) zero.push_back(Json{{"tau", irrep_json(tau)}, {"multiplicity", v}});
  Json cont = Json::array();
  for (const auto& [key, v] : table.continuous_part)
    cont.push_back(Json{{"sigma", irrep_json(key.first)}, {"nu", to_string(key.second)}, {"multiplicity", v}});
  Json rt{{"ok", !round_trip.has_value()}};
  if (round_trip) {
    rt["tau"] = irrep_json(round_trip->tau);
    rt["nu"] = to_string(round_trip->mismatch.nu);
    rt["expected"] = round_trip->mismatch.first;
    rt["regenerated"] = round_trip->mismatch.second;
  }
  Json root{{"provenance", provenance_json(provenance)},
            {"n", table.n},
            {"weight_bound", table.weight_bound},
            {"nu_max", to_string(table.nu_max)},
            {"convention", to_string(table.convention)},
            {"zero_part", zero},
            {"continuous_part", cont},
            {"round_trip", rt}};
  return root.dump(2) + "\n";
}

std::string report_json(const IsospectralityReport& report, const Provenance& provenance) {
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json o{{"tau", irrep_json(v.tau)}, {"isospectral", !v.mismatch}};
    if (v.mismatch) {
      o["nu"] = to_string(v.mismatch->nu);
      o["first"] = v.mismatch->first;
      o["second"] = v.mismatch->second;
    }
    verdicts.push_back(o);
  }
  Json root{{"provenance", provenance_json(provenance)},
            {"first", report.first},
            {"second", report.second},
            {"weight_bound", report.weight_bound},
            {"nu_max", to_string(report.nu_max)},
            {"convention", to_string(report.convention)},
            {"all_isospectral", report.all_isospectral()},
            {"representation_equivalent", report.equivalent()},
            {"consistent", report.consistent()},
            {"verdicts", verdicts}};
  if (report.witness)
    root["witness"] = Json{{"pi", motion_json(report.witness->pi)},
                           {"first", report.witness->first},
                           {"second", report.witness->second}};
  return root.dump(2) + "\n";
}

std::string report_text(const IsospectralityReport& report, const Provenance& provenance) {
  std::ostringstream out;
  std::size_t equal = 0;
  for (const auto& v : report.verdicts) equal += v.mismatch ? 0 : 1;
  out << "compare " << report.first << " vs " << report.second << "\n";
  out << "cutoffs: weight bound " << report.weight_bound << ", nu_max " << to_string(report.nu_max)
      << ", convention " << to_string(report.convention) << "\n";
  out << "manifest hash: " << provenance.manifest_hash << "\n";
  out << "tau-isospectral up to cutoffs: " << equal << " of " << report.verdicts.size() << " representations\n";
  if (const auto* d = report.first_distinguishing())
    out << "first distinguishing tau: " << label(d->tau) << " at nu = " << to_string(d->mismatch->nu) << " ("
        << d->mismatch->first << " vs " << d->mismatch->second << ")\n";
  if (report.witness)
    out << "representation equivalent up to cutoffs: no, witness " << to_string(report.witness->pi) << " ("
        << report.witness->first << " vs " << report.witness->second << ")\n";
  else
    out << "representation equivalent up to cutoffs: yes\n";
  out << "consistency: " << (report.consistent() ? "ok" : "VIOLATED") << "\n";
  out << "verdict: " << (report.all_isospectral() && report.equivalent() ? "equivalent" : "distinguished") << "\n";
  return out.str();
}

std::string validation_json(const std::string& name, const ValidationReport& report) {
  Json v = Json::array();
  for (const auto& x : report.violations) v.push_back(Json{{"kind", to_string(x.kind)}, {"detail", x.detail}});
  return Json{{"group", name}, {"valid", report.valid()}, {"violations", v}}.dump(2) + "\n";
}

void load_weight_cache(const std::string& directory) {
  std::ifstream in(cache_file(directory));
  if (!in) return;
  try {
    const Json root = Json::parse(in);
    for (const auto& e : root) {
      CachedMultiset entry{e.at("n").get<int>(), e.at("highest").get<std::vector<int>>(), {}};
      for (const auto& w : e.at("weights"))
        entry.weights.push_back({w.at(0).get<std::vector<int>>(), w.at(1).get<std::int64_t>()});
      seed_weight_cache(std::move(entry));
    }
  } catch (const std::exception&) {
    // A corrupt cache only costs recomputation.
  }
}

void save_weight_cache(const std::string& directory) {
  Json root = Json::array();
  for (const auto& entry : weight_cache_snapshot()) {
    Json ws = Json::array();
    for (const auto& w : entry.weights) ws.push_back(Json::array({w.weight, w.multiplicity}));
    root.push_back(Json{{"n", entry.n}, {"highest", entry.highest}, {"weights", ws}});
  }
  std::error_code ec;
  std::filesystem::create_directories(directory, ec);
  const std::string target = cache_file(directory);
  const std::string tmp = target + ".tmp";
  {
    std::ofstream out(tmp);
    if (!out) return;
    out << root.dump();
  }
  std::filesystem::rename(tmp, target, ec);
}

}  // namespace flatspec
