#include <gtest/gtest.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "flatspec/io.hpp"
#include "flatspec_cli/cli.hpp"

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = flatspec::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

TEST(Cli, CatalogCounts) {
  EXPECT_EQ(lines(run({"catalog", "--n", "3", "--bound", "1"}).out), 4u);
  EXPECT_EQ(lines(run({"catalog", "--n", "2", "--bound", "0"}).out), 2u);
  EXPECT_EQ(lines(run({"catalog", "--n", "1", "--bound", "3"}).out), 2u);
}

TEST(Cli, Branch) {
  const auto r = run({"branch", "--n", "3", "2:1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("standard"), std::string::npos);
  const auto bad = run({"branch", "--n", "3", "2:0"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_FALSE(bad.err.empty());
}

TEST(Cli, Character) {
  const auto r = run({"character", "--n", "3", "1:-1", "--matrix", "-1,0,0;0,-1,0;0,0,-1"});
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("-3"), std::string::npos);
}

TEST(Cli, SpectrumWithZeroCutoff) {
  const auto r = run({"spectrum", "klein-bottle", "--nu-max", "0"});
  EXPECT_EQ(r.code, 0);
  std::vector<std::string> data;
  std::istringstream in(r.out);
  for (std::string line; std::getline(in, line);)
    if (!line.empty() && line[0] != '#' && line.rfind("nu_num", 0) != 0) data.push_back(line);
  EXPECT_EQ(data, std::vector<std::string>{"0,1,0.0000000000,1"});
}

TEST(Cli, CompareExitCodes) {
  EXPECT_EQ(run({"compare", "klein-bottle", "torus-Z2", "--weight-bound", "1", "--nu-max", "2"}).code, 1);
  EXPECT_EQ(run({"compare", "dicosm", "dicosm", "--weight-bound", "1", "--nu-max", "2"}).code, 0);
  const auto j = run({"compare", "torus-Z2", "torus-rect2", "--weight-bound", "1", "--nu-max", "1", "--format", "json"});
  EXPECT_EQ(j.code, 1);
  EXPECT_NE(j.out.find("\"1/4\""), std::string::npos);
}

TEST(Cli, ErrorsExitWithTwo) {
  EXPECT_EQ(run({"spectrum", "no-such-group"}).code, 2);
  EXPECT_EQ(run({"spectrum", "torus-Z2", "--tau", "1:1"}).code, 2);  // delta must be 0 for O(2), a_1 > 0
  EXPECT_EQ(run({"frobnicate"}).code, 2);
  EXPECT_EQ(run({"--convention", "C", "catalog", "--n", "2", "--bound", "1"}).code, 2);
}

TEST(Cli, ThreadsAndRepeatsAreByteIdentical) {
  const std::vector<std::string> spectrum{"spectrum", "hantzsche-wendt", "--tau", "1:1", "--nu-max", "8"};
  auto with_threads = [](std::vector<std::string> a, const char* t) {
    a.insert(a.begin(), {"--threads", t});
    return a;
  };
  const auto a = run(with_threads(spectrum, "1"));
  EXPECT_EQ(a.out, run(with_threads(spectrum, "4")).out);
  EXPECT_EQ(a.out, run(with_threads(spectrum, "1")).out);
}

TEST(Cli, ManifestJobsAndValidation) {
  const auto dir = std::filesystem::temp_directory_path() / "flatspec-cli-test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "m.json").string();
  {
    std::ofstream f(path);
    f << R"({"version": "flatspec-manifest/1",
      "groups": [
        {"name": "k", "n": 2, "basis": [[1, 0], [0, 1]],
         "generators": [{"matrix": [[1, 0], [0, -1]], "translation": ["1/2", 0]}]},
        {"name": "bad", "n": 2, "basis": [[1, 0], [0, 1]],
         "generators": [{"matrix": [[1, 0], [0, -1]], "translation": [0, 0]}]}
      ],
      "jobs": [{"command": "spectrum", "group": "k", "nu_max": 1}, {"command": "validate", "group": "k"}]})";
  }
  const auto r = run({"--manifest", path, "run"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1,1,39.4784176044,1"), std::string::npos);  // 4 pi^2
  const auto v = run({"--manifest", path, "validate", "bad"});
  EXPECT_EQ(v.code, 1);
  EXPECT_NE(v.out.find("non-free"), std::string::npos);
  EXPECT_EQ(run({"--manifest", path, "spectrum", "bad"}).code, 2);
  std::filesystem::remove_all(dir);
}

TEST(Cli, OutputFileAndCache) {
  const auto dir = std::filesystem::temp_directory_path() / "flatspec-cli-cache";
  std::filesystem::create_directories(dir);
  ::setenv("FLATSPEC_CACHE", dir.string().c_str(), 1);
  const auto out = (dir / "s.csv").string();
  const auto r = run({"-o", out, "spectrum", "dicosm", "--tau", "2:1", "--nu-max", "2"});
  ::unsetenv("FLATSPEC_CACHE");
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  EXPECT_TRUE(std::filesystem::exists(out));
  EXPECT_TRUE(std::filesystem::exists(dir / "weight-multisets-v1.json"));
  std::filesystem::remove_all(dir);
}

TEST(Cli, PresetsDumpIsAManifest) {
  const auto r = run({"presets", "--dump"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(flatspec::parse_manifest(r.out).groups.size(), flatspec::presets().size());
}
