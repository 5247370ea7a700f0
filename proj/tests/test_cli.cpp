#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dimer/cli.hpp"

namespace fs = std::filesystem;
using dimer::cli::run_cli;

namespace {

struct Run {
  int code;
  std::string out, err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "dimer");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(int(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch(const std::string& name) {
  fs::path p = fs::temp_directory_path() / ("dimer_cli_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p);
  return {std::istreambuf_iterator<char>(f), {}};
}

nlohmann::json manifest(const fs::path& dir, const std::string& sub) {
  return nlohmann::json::parse(slurp(dir / (sub + "_manifest.json")));
}

}  // namespace

TEST_CASE("functional surface and slice") {
  auto d = scratch("functional");
  auto r = run({"functional", "--kind", "fr-pure", "-U", "1", "--grid", "201", "--out", d.string(), "--check"});
  REQUIRE(r.code == 0);
  auto m = manifest(d, "functional");
  CHECK(m["summary"]["corner_0_0"].get<double>() == doctest::Approx(1.0));
  CHECK(m["check"] == "passed");
  CHECK(m.contains("version"));
  CHECK(m.contains("wall_time_s"));
  CHECK(m["config"]["interaction"]["U"] == 1.0);
  std::ifstream f(d / "functional.csv");
  std::string header;
  std::getline(f, header);
  CHECK(header == "g11,g12,value,kind,U,V,X");
  CHECK(fs::exists(d / "functional.csv.json"));

  auto s = scratch("slice");
  REQUIRE(run({"functional", "--kind", "fc-pure", "-U", "1", "--slice", "g11=0.5", "--grid", "101",
               "--out", s.string()}).code == 0);
  std::ifstream sl(s / "slice.csv");
  std::getline(sl, header);
  CHECK(header == "g12,value");
  double g12, v, best = 1e9, at = 1e9;
  char comma;
  while (sl >> g12 >> comma >> v)
    if (v < best) best = v, at = g12;
  CHECK(best == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(std::abs(at) < 1e-12);
}

TEST_CASE("interaction triple and one-body triple parsing") {
  auto d = scratch("triple");
  CHECK(run({"functional", "--interaction", "1,0.5,0", "--slice", "g11=0.5", "--grid", "21", "--out",
             d.string(), "--check"}).code == 0);
  CHECK(manifest(d, "functional")["config"]["interaction"]["V"] == 0.5);
  CHECK(run({"functional", "--interaction", "1,0.5", "--out", d.string()}).code == 1);
  CHECK(run({"functional", "--kind", "nope", "--out", d.string()}).code == 1);
  CHECK(run({"functional", "--slice", "g11=2", "--out", d.string()}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("vrep reports two regions on-site and none for the complex variant") {
  auto d = scratch("vrep");
  REQUIRE(run({"vrep", "-U", "1", "--grid", "201", "--out", d.string(), "--check"}).code == 0);
  auto m = manifest(d, "vrep");
  CHECK(m["summary"]["region_count"] == 2);
  CHECK(m["summary"]["mismatches_beyond_two_cells"] == 0);
  CHECK(fs::exists(d / "ellipses.csv"));
  CHECK(fs::exists(d / "vanishing_angles.csv"));
  auto c = scratch("vrep_c");
  REQUIRE(run({"vrep", "-U", "1", "--kind", "fc-pure", "--grid", "101", "--out", c.string(), "--check"}).code == 0);
  CHECK(manifest(c, "vrep")["summary"]["region_count"] == 0);
  CHECK(run({"vrep", "-U", "1", "--kind", "fr-ens", "--out", c.string()}).code == 1);
}

TEST_CASE("force, sweep, envelope and energy subcommands") {
  auto d = scratch("misc");
  CHECK(run({"force", "-U", "1", "--phi", "1.5708", "--out", d.string(), "--check"}).code == 0);
  auto fm = manifest(d, "force");
  CHECK(fm["summary"]["fits"][0]["exponent"].get<double>() == doctest::Approx(-0.5).epsilon(0.04));
  CHECK(run({"sweep", "-U", "1", "--out", d.string(), "--check"}).code == 0);
  CHECK(manifest(d, "sweep")["summary"]["inside_ellipses"] == 0);
  CHECK(run({"envelope", "-U", "1", "--out", d.string(), "--check"}).code == 0);
  auto es = nlohmann::json::parse(slurp(d / "envelope_summary.json"));
  CHECK(es["max_abs_envelope_minus_reference"].get<double>() < 2e-3);
  CHECK(run({"energy", "-t", "1", "--eps1", "0", "--eps2", "0", "-U", "1", "--kind", "fr-ens", "--out",
             d.string(), "--check"}).code == 0);
  CHECK(manifest(d, "energy")["summary"]["abs_deviation"].get<double>() < 1e-6);
  CHECK(run({"energy", "--one-body", "0.5,0.2,-0.1", "-U", "2", "--out", d.string(), "--check"}).code == 0);
}

TEST_CASE("check failures exit with code two") {
  auto d = scratch("fail");
  // Far from the boundary the fit leaves the asymptotic regime.
  CHECK(run({"force", "-U", "1", "--phi", "1.5708", "--rmin", "0.01", "--rmax", "0.05", "--points", "8",
             "--out", d.string(), "--check"}).code == 2);
  CHECK(manifest(d, "force")["check"] == "failed");
}

TEST_CASE("outputs are deterministic and honor the environment directory") {
  auto a = scratch("det_a"), b = scratch("det_b");
  REQUIRE(run({"sweep", "-U", "1", "--samples", "2000", "--out", a.string()}).code == 0);
  setenv(dimer::cli::kOutDirEnv, b.string().c_str(), 1);
  REQUIRE(run({"sweep", "-U", "1", "--samples", "2000"}).code == 0);
  unsetenv(dimer::cli::kOutDirEnv);
  CHECK(slurp(a / "sweep.csv") == slurp(b / "sweep.csv"));
  CHECK(!slurp(a / "sweep.csv").empty());
}

TEST_CASE("unwritable output is a validation error") {
  auto d = scratch("file");
  std::ofstream(d.string()) << "x";
  CHECK(run({"sweep", "-U", "1", "--out", d.string()}).code == 1);
  fs::remove(d);
}
