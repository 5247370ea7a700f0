#include <algorithm>
#include <cmath>
#include <numbers>

#include "dimer/analytic.hpp"

namespace dimer::analytic {

double force_prefactor(const InteractionParams& w, double phi) {
  validate(w);
  double s = std::sin(phi);
  return 0.5 * std::abs(s * s * (w.V - w.U) - 2.0 * w.V);
}

VanishingAngles vanishing_angles(const InteractionParams& w) {
  validate(w);
  VanishingAngles out;
  if (w.V == w.U) {
    out.all_angles = w.V == 0.0;
    return out;
  }
  double q = 2.0 * w.V / (w.V - w.U);
  if (!(q >= 0.0 && q <= 1.0)) return out;
  double p = std::asin(std::sqrt(q));
  const double pi = std::numbers::pi;
  for (double a : {p, -p, pi - p, pi + p}) {
    double c = canonical_angle(a);
    bool dup = std::any_of(out.angles.begin(), out.angles.end(), [&](double b) {
      double d = std::abs(b - c);
      return std::min(d, 2.0 * pi - d) <= kAngleDedupTolerance;
    });
    if (!dup) out.angles.push_back(c);
  }
  std::sort(out.angles.begin(), out.angles.end());
  return out;
}

namespace {

struct Hessian {
  double xx, yy, xy;
  double det() const { return xx * yy - xy * xy; }
};

Hessian central_hessian(const InteractionParams& w, double x, double y, double h) {
  auto f = [&](double dx, double dy) {
    return f_r_pure_general(w, RealRdm{0.5 + x + dx, y + dy});
  };
  double f0 = f(0, 0);
  Hessian H;
  H.xx = (f(h, 0) - 2.0 * f0 + f(-h, 0)) / (h * h);
  H.yy = (f(0, h) - 2.0 * f0 + f(0, -h)) / (h * h);
  H.xy = (f(h, h) - f(h, -h) - f(-h, h) + f(-h, -h)) / (4.0 * h * h);
  return H;
}

}  // namespace

double hessian_det_f_r(const InteractionParams& w, const RealRdm& r) {
  validate(w);
  require_in_disk(r);
  double x = r.g11 - 0.5, y = r.g12;
  double rho = std::hypot(x, y);
  if (0.5 - rho < kHessianBoundaryBand)
    throw std::domain_error("Hessian evaluation too close to the disk boundary");
  if (std::abs(x) < kHessianKinkTube || std::abs(y) < kHessianKinkTube)
    throw std::domain_error("Hessian evaluation on a coordinate axis");
  double kink = (w.V - w.U) * y * y / (rho * rho) - 2.0 * w.V;
  if (std::abs(kink) < kHessianKinkTube)
    throw std::domain_error("Hessian evaluation inside the kink tube");
  Hessian a = central_hessian(w, x, y, kHessianStep);
  Hessian b = central_hessian(w, x, y, 0.5 * kHessianStep);
  Hessian rich{(4.0 * b.xx - a.xx) / 3.0, (4.0 * b.yy - a.yy) / 3.0, (4.0 * b.xy - a.xy) / 3.0};
  return rich.det();
}

}  // namespace dimer::analytic
