#include "dimer/varrep.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace dimer::varrep {

std::string to_string(Status s) {
  switch (s) {
    case Status::representable: return "representable";
    case Status::not_representable: return "not_representable";
    case Status::boundary_excluded: return "boundary_excluded";
    case Status::boundary_touchpoint: return "boundary_touchpoint";
  }
  return "?";
}

namespace {

Status boundary_status(const InteractionParams& w, const RealRdm& r) {
  double phi = polar_from_cartesian(r).phi;
  return analytic::force_prefactor(w, phi) > kPrefactorTolerance ? Status::boundary_excluded
                                                                 : Status::boundary_touchpoint;
}

Status interior_status(double gap, double f_ens, double tol) {
  return gap > tol * std::max(1.0, std::abs(f_ens)) ? Status::not_representable
                                                    : Status::representable;
}

}  // namespace

VrepVerdict classify_point(FunctionalKind kind_pure, FunctionalKind kind_ens,
                           const InteractionParams& w, const RealRdm& r, double tol,
                           const search::SearchOptions& opts) {
  validate(w);
  require_in_disk(r);
  double fp = search::evaluate(kind_pure, w, r, opts);
  double fe = search::evaluate(kind_ens, w, r, opts);
  VrepVerdict v;
  v.gap = fp - fe;
  v.status = polar_from_cartesian(r).R < kBoundaryBand ? boundary_status(w, r)
                                                        : interior_status(v.gap, fe, tol);
  return v;
}

VrepMap vrep_map(FunctionalKind kind_pure, FunctionalKind kind_ens, const InteractionParams& w,
                 int resolution, double tol, const search::SearchOptions& opts) {
  validate(w);
  if (resolution < 101) throw std::invalid_argument("vrep map resolution must be at least 101");
  const std::string tag = to_string(kind_pure);
  auto fp = [&](const RealRdm& r) { return search::evaluate(kind_pure, w, r, opts); };
  VrepMap m{GridField(resolution), GridField(resolution), GridField(resolution),
            GridField(resolution), 0};
  m.pure = sample_grid(resolution, fp, tag, 4 * (resolution - 1));
  if (kind_ens == ensemble_partner(kind_pure)) {
    m.ensemble = search::lower_convex_envelope(m.pure);
  } else {
    m.ensemble = sample_grid(
        resolution, [&](const RealRdm& r) { return search::evaluate(kind_ens, w, r, opts); },
        to_string(kind_ens));
  }
  m.status.set_generator("vrep_map(" + tag + "," + to_string(kind_ens) + ")");
  m.gap.set_generator(m.status.generator() + ".gap");
  for (std::size_t k = 0; k < m.pure.size(); ++k) {
    if (!m.pure.active(k)) continue;
    RealRdm r = m.pure.node(k);
    double gap = m.pure.value(k) - m.ensemble.value(k);
    m.gap.value(k) = gap;
    Status s = polar_from_cartesian(r).R < kBoundaryBand
                   ? boundary_status(w, r)
                   : interior_status(gap, m.ensemble.value(k), tol);
    m.status.value(k) = static_cast<int>(s);
  }
  m.region_count = count_regions(m.status);
  return m;
}

int count_regions(const GridField& status) {
  const int n = status.resolution();
  const double target = static_cast<int>(Status::not_representable);
  std::vector<int> label(status.size(), 0);
  int regions = 0;
  std::vector<std::size_t> stack;
  for (std::size_t k = 0; k < status.size(); ++k) {
    if (!status.active(k) || status.value(k) != target || label[k]) continue;
    ++regions;
    label[k] = regions;
    stack.push_back(k);
    while (!stack.empty()) {
      std::size_t c = stack.back();
      stack.pop_back();
      int i = int(c / n), j = int(c % n);
      const int di[4] = {1, -1, 0, 0}, dj[4] = {0, 0, 1, -1};
      for (int d = 0; d < 4; ++d) {
        int a = i + di[d], b = j + dj[d];
        if (a < 0 || b < 0 || a >= n || b >= n) continue;
        std::size_t q = status.index(a, b);
        if (status.active(q) && status.value(q) == target && !label[q]) {
          label[q] = regions;
          stack.push_back(q);
        }
      }
    }
  }
  return regions;
}

}  // namespace dimer::varrep
