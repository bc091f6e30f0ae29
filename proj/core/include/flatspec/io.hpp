#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flatspec/bieberbach.hpp"
#include "flatspec/reconstruct.hpp"
#include "flatspec/spectra.hpp"

namespace flatspec {

class ManifestError : public Error {
 public:
  using Error::Error;
};

struct Job {
  std::string command;  // spectrum | reconstruct | compare | validate
  std::vector<std::string> groups;
  std::string tau = "trivial";
  Rational nu_max{10};
  int weight_bound = 3;
};

struct Manifest {
  std::string version;
  std::vector<BieberbachGroup> groups;
  std::vector<Job> jobs;
  std::string hash;  // FNV-1a of the source text

  const BieberbachGroup& group(const std::string& name) const;
};

inline constexpr std::string_view kManifestVersion = "flatspec-manifest/1";

/// JSON manifest. Group entries: name, n, basis (n basis vectors of
/// rational strings), coordinates ("lattice" or "ambient"), generators
/// [{matrix, translation}] with g = B L_b. Group data errors surface as
/// GroupError so callers can classify them.
Manifest parse_manifest(std::string_view text);

/// Manifest text describing the groups in lattice coordinates.
std::string serialize_manifest(const std::vector<BieberbachGroup>& groups, const std::vector<Job>& jobs = {});

std::uint64_t fnv1a(std::string_view data);
std::string hash_hex(std::uint64_t h);

/// "trivial", "det", or "a1,...,am:delta" (delta in {1,-1,0,+1}).
OIrrep parse_irrep(int n, std::string_view spec);
Convention parse_convention(std::string_view text);
std::string to_string(Convention c);

struct Provenance {
  std::string manifest_hash;
  std::string command;
};

std::string spectrum_csv(const SpectrumTable& table, const Provenance& provenance);
std::string spectrum_json(const SpectrumTable& table, const Provenance& provenance);
std::string multiplicity_json(const MultiplicityTable& table, const Provenance& provenance,
                              const std::optional<RoundTripFailure>& round_trip);
std::string report_json(const IsospectralityReport& report, const Provenance& provenance);
std::string report_text(const IsospectralityReport& report, const Provenance& provenance);
std::string validation_json(const std::string& name, const ValidationReport& report);

/// Weight memo persistence (FLATSPEC_CACHE). Missing or unreadable files are ignored.
void load_weight_cache(const std::string& directory);
void save_weight_cache(const std::string& directory);

}  // namespace flatspec
