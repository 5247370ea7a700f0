#include <algorithm>
#include <cmath>
#include <numbers>

#include "dimer/minimize.hpp"
#include "dimer/search.hpp"

namespace dimer::search {

namespace {

// (s, phi) -> gamma with 1 - 2R = cos(2s): every real pair maps into the disk.
RealRdm from_angles(double s, double phi) {
  double rho = std::cos(2.0 * s);
  return {0.5 + 0.5 * rho * std::cos(phi), 0.5 * rho * std::sin(phi)};
}

std::pair<double, double> to_angles(const RealRdm& r) {
  double x = r.g11 - 0.5, y = r.g12;
  double rho = std::min(1.0, 2.0 * std::hypot(x, y));
  return {0.5 * std::acos(rho), std::atan2(y, x)};
}

}  // namespace

EnergyResult legendre_fenchel_energy(const OneBodyParams& p, FunctionalKind kind,
                                     const InteractionParams& w, int resolution,
                                     const SearchOptions& opts) {
  validate(p);
  validate(w);
  validate(opts);
  if (resolution < 51) throw std::invalid_argument("energy scan resolution must be at least 51");

  const bool closed = has_closed_form(kind, w);
  auto objective = [&](const RealRdm& r) {
    return one_body_energy(p, r) + evaluate(kind, w, r, opts);
  };
  // A linear objective has the same minimum on a functional and on its convex
  // envelope, so numeric kinds are located on the closed-form pure functional.
  auto scan_objective = [&](const RealRdm& r) {
    return one_body_energy(p, r) +
           (closed ? evaluate(kind, w, r, opts) : analytic::f_r_pure_general(w, r));
  };

  GridField grid = sample_grid(resolution, scan_objective, "legendre_fenchel_scan");
  const int n = resolution;
  struct Cand {
    double value;
    RealRdm r;
  };
  std::vector<Cand> cands;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!grid.active(i, j)) continue;
      double v = grid.value(i, j);
      bool local = true;
      for (int di = -1; di <= 1 && local; ++di)
        for (int dj = -1; dj <= 1 && local; ++dj) {
          int a = i + di, b = j + dj;
          if ((di == 0 && dj == 0) || a < 0 || b < 0 || a >= n || b >= n) continue;
          if (grid.active(a, b) && grid.value(a, b) < v) local = false;
        }
      if (local) cands.push_back({v, grid.node(i, j)});
    }
  std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) { return a.value < b.value; });
  const std::size_t keep = closed ? 12 : 4;
  if (cands.size() > keep) cands.resize(keep);
  cands.push_back({scan_objective(RealRdm{0.5, 0.0}), RealRdm{0.5, 0.0}});

  const double step = std::max(3.0 * grid.spacing(), 1e-3);
  auto polish = [&](const auto& obj, const RealRdm& r0, double h, int iterations) {
    auto [s0, phi0] = to_angles(r0);
    auto f = [&](const std::vector<double>& v) { return obj(from_angles(v[0], v[1])); };
    auto m = numeric::nelder_mead(f, {s0, phi0}, {h, h}, 1e-11, iterations);
    return from_angles(m.x[0], m.x[1]);
  };
  std::vector<Cand> polished;
  for (const Cand& c : cands) {
    RealRdm r = polish(scan_objective, c.r, step, std::max(opts.max_iterations, 3000));
    polished.push_back({scan_objective(c.r), c.r});
    polished.push_back({scan_objective(r), r});
  }
  if (!closed) {
    // The proxy and the numeric functional share their minimizers; the
    // numeric objective is re-evaluated there and given a short local polish.
    std::sort(polished.begin(), polished.end(),
              [](const Cand& a, const Cand& b) { return a.value < b.value; });
    const double floor = polished.front().value;
    std::vector<Cand> exact;
    for (const Cand& c : polished) {
      if (c.value > floor + 1e-6 * std::max(1.0, std::abs(floor))) break;
      bool seen = std::any_of(exact.begin(), exact.end(), [&](const Cand& e) {
        return std::hypot(e.r.g11 - c.r.g11, e.r.g12 - c.r.g12) < 1e-9;
      });
      if (!seen) exact.push_back({objective(c.r), c.r});
    }
    RealRdm r = polish(objective, exact.front().r, 1e-4, 100);
    exact.push_back({objective(r), r});
    polished = std::move(exact);
  }
  EnergyResult res;
  res.energy = std::min_element(polished.begin(), polished.end(), [](const Cand& a, const Cand& b) {
                 return a.value < b.value;
               })->value;
  for (const Cand& c : polished) {
    if (c.value > res.energy + kMinimizerValueTolerance) continue;
    bool dup = std::any_of(res.minimizers.begin(), res.minimizers.end(), [&](const RealRdm& m) {
      return std::hypot(m.g11 - c.r.g11, m.g12 - c.r.g12) < 1e-6;
    });
    if (!dup) res.minimizers.push_back(c.r);
  }
  return res;
}

}  // namespace dimer::search
