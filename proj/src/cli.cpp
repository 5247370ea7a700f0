#include "dimer/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "dimer/analytic.hpp"
#include "dimer/search.hpp"
#include "dimer/varrep.hpp"
#include "dimer/version.hpp"

namespace dimer::cli {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

struct RunConfig {
  std::string subcommand;
  std::string interaction;  // "U,V,X"
  std::string one_body;     // "t,eps1,eps2"
  InteractionParams w;
  OneBodyParams h{1.0, 0.0, 0.0};
  std::string kind = "fr-pure";
  int grid = 0;  // 0: subcommand default
  std::string slice;
  std::string out;
  std::uint64_t seed = 12345;
  int restarts = 64;
  bool check = false;
  // Subcommand specific.
  std::vector<double> phis;
  double r_min = 1e-4, r_max = 1e-2;
  int points = 40;
  int samples = 10000;
  double magnitude_min = 0.1, magnitude_max = 100.0;
};

class CheckFailed : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_triple(const std::string& s, const char* what) {
  std::vector<double> v;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("malformed ") + what + ": " + s);
    }
  }
  if (v.size() != 3) throw std::invalid_argument(std::string(what) + " needs three values");
  return v;
}

search::SearchOptions options(const RunConfig& c) {
  search::SearchOptions o;
  o.seed = c.seed;
  o.restarts = c.restarts;
  search::validate(o);
  return o;
}

fs::path output_dir(const RunConfig& c) {
  fs::path dir = c.out;
  if (dir.empty()) {
    const char* env = std::getenv(kOutDirEnv);
    dir = env && *env ? env : ".";
  }
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (!fs::is_directory(dir)) throw std::runtime_error("cannot create output directory " + dir.string());
  return dir;
}

std::ofstream open_table(const fs::path& p) {
  std::ofstream f(p);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << std::setprecision(17);
  return f;
}

json config_echo(const RunConfig& c) {
  return {{"subcommand", c.subcommand},
          {"interaction", {{"U", c.w.U}, {"V", c.w.V}, {"X", c.w.X}}},
          {"one_body", {{"t", c.h.t}, {"eps1", c.h.eps1}, {"eps2", c.h.eps2}}},
          {"kind", c.kind},
          {"grid", c.grid},
          {"slice", c.slice},
          {"seed", c.seed},
          {"restarts", c.restarts},
          {"check", c.check}};
}

std::vector<analytic::EllipseSpec> ellipses_for(const InteractionParams& w, bool& supported) {
  supported = true;
  try {
    return w.onsite() ? analytic::ellipse_onsite(w.U) : analytic::ellipses_general(w);
  } catch (const analytic::UnsupportedAnalytic&) {
    supported = false;
    return {};
  }
}

void write_ellipse_overlay(const fs::path& dir, const std::vector<analytic::EllipseSpec>& es,
                           const InteractionParams& w, std::vector<std::string>& files) {
  auto f = open_table(dir / "ellipses.csv");
  f << "branch,theta,g11,g12\n";
  for (const auto& e : es)
    for (int k = 0; k <= 256; ++k) {
      double th = 2.0 * std::numbers::pi * k / 256;
      RealRdm p = e.point(th);
      f << analytic::to_string(e.branch) << ',' << th << ',' << p.g11 << ',' << p.g12 << '\n';
    }
  files.push_back("ellipses.csv");

  auto v = open_table(dir / "vanishing_angles.csv");
  v << "phi,g11,g12\n";
  for (double phi : analytic::vanishing_angles(w).angles) {
    RealRdm p = cartesian_from_polar({0.0, phi});
    v << phi << ',' << p.g11 << ',' << p.g12 << '\n';
  }
  files.push_back("vanishing_angles.csv");
}

// ---- functional ----------------------------------------------------------

json cmd_functional(const RunConfig& c, const fs::path& dir, std::vector<std::string>& files) {
  FunctionalKind kind = parse_kind(c.kind);
  auto opts = options(c);
  const int n = c.grid ? c.grid : 201;
  if (n < 3) throw std::invalid_argument("--grid must be at least 3");
  auto f = [&](const RealRdm& r) { return search::evaluate(kind, c.w, r, opts); };
  json summary;
  double worst_oracle = 0.0, worst_order = -INFINITY;
  auto audit = [&](const RealRdm& r, double v) {
    if (!c.check) return;
    double fr = analytic::f_r_pure_general(c.w, r);
    worst_order = std::max(worst_order, v - fr);
    if (kind == FunctionalKind::FR_pure)
      worst_oracle = std::max(worst_oracle, std::abs(v - search::min_pure_real(c.w, r, opts).value));
  };

  if (!c.slice.empty()) {
    auto eq = c.slice.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--slice expects g11=v or g12=v");
    std::string axis = c.slice.substr(0, eq);
    double v = std::stod(c.slice.substr(eq + 1));
    if (axis != "g11" && axis != "g12") throw std::invalid_argument("--slice axis must be g11 or g12");
    double half = axis == "g11" ? std::sqrt(std::max(0.0, v * (1.0 - v)))
                                : std::sqrt(std::max(0.0, 0.25 - v * v));
    if ((axis == "g11" && (v < 0.0 || v > 1.0)) || (axis == "g12" && std::abs(v) > 0.5))
      throw std::invalid_argument("--slice value outside the disk");
    double mid = axis == "g11" ? 0.0 : 0.5;
    auto t = open_table(dir / "slice.csv");
    t << (axis == "g11" ? "g12" : "g11") << ",value\n";
    for (int k = 0; k < n; ++k) {
      double s = mid - half + 2.0 * half * k / (n - 1);
      RealRdm r = axis == "g11" ? RealRdm{v, s} : RealRdm{s, v};
      if (!in_disk(r)) continue;
      double val = f(r);
      audit(r, val);
      t << s << ',' << val << '\n';
    }
    files.push_back("slice.csv");
    summary["slice"] = c.slice;
  } else {
    GridField g = sample_grid(n, f, c.kind);
    auto t = open_table(dir / "functional.csv");
    t << "g11,g12,value,kind,U,V,X\n";
    // Oracle audit on a sub-lattice keeps --check affordable at fine grids.
    const int stride = std::max(1, (n - 1) / 20);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!g.active(i, j)) continue;
        RealRdm r = g.node(i, j);
        t << r.g11 << ',' << r.g12 << ',' << g.value(i, j) << ',' << c.kind << ',' << c.w.U << ','
          << c.w.V << ',' << c.w.X << '\n';
        if (i % stride == 0 && j % stride == 0) audit(r, g.value(i, j));
      }
    std::ofstream side(dir / "functional.csv.json");
    side << g.sidecar().dump(2) << '\n';
    files.push_back("functional.csv");
    files.push_back("functional.csv.json");
    summary["corner_0_0"] = f(RealRdm{0.0, 0.0});
  }
  if (c.check) {
    summary["max_excess_over_fr_pure"] = worst_order;
    summary["max_oracle_deviation"] = worst_oracle;
    if (worst_order > 1e-8 || worst_oracle > 1e-8)
      throw CheckFailed("functional check failed: ordering excess " + std::to_string(worst_order) +
                        ", oracle deviation " + std::to_string(worst_oracle));
  }
  return summary;
}

// ---- vrep ----------------------------------------------------------------

json cmd_vrep(const RunConfig& c, const fs::path& dir, std::vector<std::string>& files) {
  FunctionalKind kp = parse_kind(c.kind);
  if (!is_pure(kp)) throw std::invalid_argument("vrep --kind must name a pure functional");
  const int n = c.grid ? c.grid : 201;
  auto m = varrep::vrep_map(kp, ensemble_partner(kp), c.w, n, varrep::kVerdictTolerance, options(c));

  auto t = open_table(dir / "vrep.csv");
  t << "g11,g12,status,gap\n";
  for (std::size_t k = 0; k < m.status.size(); ++k) {
    if (!m.status.active(k)) continue;
    RealRdm r = m.status.node(k);
    t << r.g11 << ',' << r.g12 << ',' << int(m.status.value(k)) << ',' << m.gap.value(k) << '\n';
  }
  files.push_back("vrep.csv");
  bool supported = false;
  auto es = ellipses_for(c.w, supported);
  write_ellipse_overlay(dir, es, c.w, files);

  // Disagreements with analytic membership farther than two cells from the curve.
  int mismatches = -1;
  if (supported && kp == FunctionalKind::FR_pure) {
    mismatches = 0;
    const double band = 2.0 * m.status.spacing();
    for (std::size_t k = 0; k < m.status.size(); ++k) {
      if (!m.status.active(k)) continue;
      RealRdm r = m.status.node(k);
      if (polar_from_cartesian(r).R < varrep::kBoundaryBand) continue;
      bool numeric = m.status.value(k) == double(varrep::Status::not_representable);
      bool exact = analytic::membership(es, r) == analytic::Membership::inside;
      if (numeric != exact && analytic::distance_to_ellipses(es, r) > band) ++mismatches;
    }
  }
  json summary{{"region_count", m.region_count},
               {"ellipse_count", es.size()},
               {"ellipses_supported", supported},
               {"mismatches_beyond_two_cells", mismatches}};
  if (c.check) {
    bool ok = true;
    if (kp == FunctionalKind::FR_pure && supported) ok = mismatches == 0;
    if (kp != FunctionalKind::FR_pure) ok = m.region_count == 0;
    if (!ok) throw CheckFailed("vrep check failed: " + summary.dump());
  }
  return summary;
}

// ---- force ---------------------------------------------------------------

json cmd_force(const RunConfig& c, const fs::path& dir, std::vector<std::string>& files) {
  std::vector<double> phis = c.phis;
  if (phis.empty())
    for (int k = 0; k < 8; ++k) phis.push_back(2.0 * std::numbers::pi * (k + 0.5) / 8);
  auto t = open_table(dir / "force.csv");
  t << "phi,prefactor,exponent,residual,analytic_prefactor,bounded,flagged\n";
  json fits = json::array();
  int failures = 0;
  for (double phi : phis) {
    auto fit = varrep::force_fit(c.w, phi, c.r_min, c.r_max, c.points);
    t << phi << ',' << fit.prefactor << ',' << fit.exponent << ',' << fit.residual << ','
      << fit.analytic_prefactor << ',' << fit.bounded << ',' << fit.flagged << '\n';
    bool ok = fit.analytic_prefactor > 1e-6
                  ? std::abs(fit.exponent + 0.5) <= 0.02 &&
                        std::abs(fit.prefactor - fit.analytic_prefactor) <= 0.01 * fit.analytic_prefactor
                  : fit.prefactor < 1e-6;
    failures += !ok;
    fits.push_back({{"phi", phi}, {"prefactor", fit.prefactor}, {"exponent", fit.exponent},
                    {"analytic_prefactor", fit.analytic_prefactor}, {"flagged", fit.flagged}});
  }
  files.push_back("force.csv");
  std::vector<analytic::EllipseSpec> none;
  write_ellipse_overlay(dir, none, c.w, files);
  json summary{{"fits", fits}, {"failures", failures}};
  if (c.check && failures) throw CheckFailed("force check failed at " + std::to_string(failures) + " angles");
  return summary;
}

// ---- sweep ---------------------------------------------------------------

json cmd_sweep(const RunConfig& c, const fs::path& dir, std::vector<std::string>& files) {
  varrep::SweepRange range{c.magnitude_min, c.magnitude_max};
  auto rows = varrep::ground_state_sweep(c.w, range, c.samples);
  bool supported = false;
  auto es = ellipses_for(c.w, supported);
  auto t = open_table(dir / "sweep.csv");
  t << "t,eps1,eps2,g11,g12,energy,degeneracy\n";
  int inside = 0;
  double min_form = INFINITY;
  for (const auto& s : rows) {
    t << s.h.t << ',' << s.h.eps1 << ',' << s.h.eps2 << ',' << s.gamma.g11 << ',' << s.gamma.g12
      << ',' << s.energy << ',' << s.degeneracy << '\n';
    for (const auto& e : es) min_form = std::min(min_form, e.quadratic_form(s.gamma));
    if (!es.empty() && analytic::membership(es, s.gamma) == analytic::Membership::inside) ++inside;
  }
  files.push_back("sweep.csv");
  write_ellipse_overlay(dir, es, c.w, files);
  json summary{{"rows", rows.size()}, {"inside_ellipses", inside}, {"ellipses_supported", supported}};
  if (std::isfinite(min_form)) summary["min_quadratic_form"] = min_form;
  if (c.check && inside) throw CheckFailed("sweep check failed: attained points inside ellipses");
  return summary;
}

// ---- envelope ------------------------------------------------------------

json cmd_envelope(const RunConfig& c, const fs::path& dir, std::vector<std::string>& files) {
  const int n = c.grid ? c.grid : 201;
  auto opts = options(c);
  GridField pure = sample_grid(
      n, [&](const RealRdm& r) { return analytic::f_r_pure_general(c.w, r); }, "fr-pure",
      4 * (n - 1));
  GridField env = search::lower_convex_envelope(pure);
  auto t = open_table(dir / "envelope.csv");
  t << "g11,g12,pure,envelope,reference\n";
  // Reference: closed form on-site, the real ensemble oracle on a sub-lattice otherwise.
  const int stride = c.w.onsite() ? 1 : std::max(1, (n - 1) / 20);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!pure.active(i, j)) continue;
      RealRdm r = pure.node(i, j);
      t << r.g11 << ',' << r.g12 << ',' << pure.value(i, j) << ',' << env.value(i, j) << ',';
      if (i % stride == 0 && j % stride == 0) {
        double ref = c.w.onsite() ? analytic::f_c_pure_onsite(c.w.U, r)
                                  : search::min_ensemble(c.w, to_complex(r), opts).value;
        worst = std::max(worst, std::abs(env.value(i, j) - ref));
        t << ref;
      }
      t << '\n';
    }
  files.push_back("envelope.csv");
  json summary{{"max_abs_envelope_minus_reference", worst},
               {"reference", c.w.onsite() ? "closed_form" : "ensemble_oracle"},
               {"resolution", n}};
  std::ofstream(dir / "envelope_summary.json") << summary.dump(2) << '\n';
  files.push_back("envelope_summary.json");
  if (c.check && worst >= 2e-3) throw CheckFailed("envelope check failed: " + std::to_string(worst));
  return summary;
}

// ---- energy --------------------------------------------------------------

json cmd_energy(const RunConfig& c, const fs::path& dir, std::vector<std::string>& files) {
  FunctionalKind kind = parse_kind(c.kind);
  const int n = c.grid ? c.grid : 801;
  auto res = search::legendre_fenchel_energy(c.h, kind, c.w, n, options(c));
  GroundState gs = ground_state(c.h, c.w);
  auto t = open_table(dir / "energy.csv");
  t << "g11,g12,energy,exact\n";
  for (const auto& r : res.minimizers)
    t << r.g11 << ',' << r.g12 << ',' << res.energy << ',' << gs.energy << '\n';
  files.push_back("energy.csv");
  double dev = std::abs(res.energy - gs.energy);
  json summary{{"energy", res.energy}, {"exact", gs.energy}, {"abs_deviation", dev},
               {"minimizers", res.minimizers.size()}};
  if (c.check && dev > 1e-6) throw CheckFailed("energy check failed: deviation " + std::to_string(dev));
  return summary;
}

void add_common(CLI::App* sub, RunConfig& c) {
  sub->add_option("--interaction", c.interaction, "Interaction as U,V,X (overrides -U/-V/-X)");
  sub->add_option("-U", c.w.U, "On-site interaction")->capture_default_str();
  sub->add_option("-V", c.w.V, "Inter-site interaction")->capture_default_str();
  sub->add_option("-X", c.w.X, "Exchange-type coupling")->capture_default_str();
  sub->add_option("--out", c.out, std::string("Output directory (default: $") + kOutDirEnv + " or .)");
  sub->add_option("--seed", c.seed, "Deterministic seed")->capture_default_str();
  sub->add_option("--restarts", c.restarts, "Search resolution for numeric oracles")->capture_default_str();
  sub->add_flag("--check", c.check, "Verify the defining oracle relation; exit 2 on failure");
}

void add_kind(CLI::App* sub, RunConfig& c) {
  sub->add_option("--kind", c.kind, "fr-pure, fr-ens, fc-pure, fc-ens, fct-pure, fct-ens")
      ->capture_default_str();
}

void add_grid(CLI::App* sub, RunConfig& c, const char* dflt) {
  sub->add_option("--grid", c.grid, std::string("Grid points per axis (default ") + dflt + ")");
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Universal functionals and v-representability of the two-site Hubbard dimer"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  auto* functional = app.add_subcommand("functional", "Evaluate a functional on a grid or a 1-D slice");
  add_common(functional, c);
  add_kind(functional, c);
  add_grid(functional, c, "201");
  functional->add_option("--slice", c.slice, "g11=v or g12=v");

  auto* vrep = app.add_subcommand("vrep", "v-representability map with analytic ellipse overlay");
  add_common(vrep, c);
  add_kind(vrep, c);
  add_grid(vrep, c, "201");

  auto* force = app.add_subcommand("force", "Exchange-force fits near the disk boundary");
  add_common(force, c);
  force->add_option("--phi", c.phis, "Polar angles (default: 8 angles)");
  force->add_option("--rmin", c.r_min)->capture_default_str();
  force->add_option("--rmax", c.r_max)->capture_default_str();
  force->add_option("--points", c.points)->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Ground-state 1RDMs over real one-body parameters");
  add_common(sweep, c);
  sweep->add_option("--samples", c.samples)->capture_default_str();
  sweep->add_option("--magnitude-min", c.magnitude_min)->capture_default_str();
  sweep->add_option("--magnitude-max", c.magnitude_max)->capture_default_str();

  auto* envelope = app.add_subcommand("envelope", "Lower convex envelope of the real pure functional");
  add_common(envelope, c);
  add_grid(envelope, c, "201");

  auto* energy = app.add_subcommand("energy", "Ground-state energy by Legendre-Fenchel minimization");
  add_common(energy, c);
  add_kind(energy, c);
  add_grid(energy, c, "801");
  energy->add_option("--one-body", c.one_body, "One-body parameters as t,eps1,eps2");
  energy->add_option("-t", c.h.t)->capture_default_str();
  energy->add_option("--eps1", c.h.eps1)->capture_default_str();
  energy->add_option("--eps2", c.h.eps2)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  CLI::App* chosen = app.get_subcommands().front();
  c.subcommand = chosen->get_name();
  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> files;
  json summary;
  int code = kExitOk;
  std::string failure;
  fs::path dir;
  try {
    if (!c.interaction.empty()) {
      auto v = parse_triple(c.interaction, "--interaction");
      c.w = {v[0], v[1], v[2]};
    }
    if (!c.one_body.empty()) {
      auto v = parse_triple(c.one_body, "--one-body");
      c.h = {v[0], v[1], v[2]};
    }
    validate(c.w);
    validate(c.h);
    dir = output_dir(c);
    if (c.subcommand == "functional") summary = cmd_functional(c, dir, files);
    else if (c.subcommand == "vrep") summary = cmd_vrep(c, dir, files);
    else if (c.subcommand == "force") summary = cmd_force(c, dir, files);
    else if (c.subcommand == "sweep") summary = cmd_sweep(c, dir, files);
    else if (c.subcommand == "envelope") summary = cmd_envelope(c, dir, files);
    else summary = cmd_energy(c, dir, files);
  } catch (const CheckFailed& e) {
    code = kExitCheckFailed;
    failure = e.what();
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitValidation;
  }

  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  json manifest{{"config", config_echo(c)},
                {"version", kVersion},
                {"wall_time_s", wall},
                {"outputs", files},
                {"summary", summary},
                {"check", c.check ? (code == kExitOk ? "passed" : "failed") : "not_run"}};
  std::ofstream m(dir / (c.subcommand + "_manifest.json"));
  if (!m) {
    err << "error: cannot write manifest in " << dir << '\n';
    return kExitValidation;
  }
  m << manifest.dump(2) << '\n';
  out << summary.dump() << '\n';
  if (code != kExitOk) err << failure << '\n';
  return code;
}

}  // namespace dimer::cli
