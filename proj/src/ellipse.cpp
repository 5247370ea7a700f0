#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dimer/analytic.hpp"

namespace dimer::analytic {

namespace {

EllipseSpec make(double c11, double c12, double a, double b, Branch branch) {
  EllipseSpec e;
  e.center_g11 = c11;
  e.center_g12 = c12;
  e.semi_g11 = a;
  e.semi_g12 = b;
  e.orientation = a >= b ? Axis::g11 : Axis::g12;
  e.branch = branch;
  return e;
}

// Pair of ellipses mirrored through g11 = 1/2, centered at |x| = offset on the g11 axis.
std::vector<EllipseSpec> horizontal_pair(double offset, double a, double b) {
  return {make(0.5 - offset, 0.0, a, b, Branch::left), make(0.5 + offset, 0.0, a, b, Branch::right)};
}

// Pair mirrored through g12 = 0, centered at |y| = offset on the g12 axis.
std::vector<EllipseSpec> vertical_pair(double offset, double a, double b) {
  return {make(0.5, offset, a, b, Branch::upper), make(0.5, -offset, a, b, Branch::lower)};
}

}  // namespace

std::string to_string(Branch b) {
  switch (b) {
    case Branch::left: return "left";
    case Branch::right: return "right";
    case Branch::upper: return "upper";
    case Branch::lower: return "lower";
  }
  return "?";
}

std::string to_string(Membership m) {
  switch (m) {
    case Membership::inside: return "inside";
    case Membership::on: return "on";
    case Membership::outside: return "outside";
  }
  return "?";
}

double EllipseSpec::quadratic_form(const RealRdm& r) const {
  double u = (r.g11 - center_g11) / semi_g11;
  double v = (r.g12 - center_g12) / semi_g12;
  return u * u + v * v - 1.0;
}

RealRdm EllipseSpec::point(double theta) const {
  return {center_g11 + semi_g11 * std::cos(theta), center_g12 + semi_g12 * std::sin(theta)};
}

std::vector<EllipseSpec> ellipse_onsite(double U) {
  if (!std::isfinite(U)) throw std::invalid_argument("U must be finite");
  // For U < 0 the pure functional is convex and no region exists.
  if (!(U > 0.0)) return {};
  return horizontal_pair(0.25, 0.25, 0.25 * std::numbers::sqrt2);
}

std::vector<EllipseSpec> ellipses_general(const InteractionParams& w) {
  validate(w);
  if (w.X != 0.0) throw UnsupportedAnalytic("no closed-form ellipses for X != 0");
  if (w.U == w.V) throw UnsupportedAnalytic("no closed-form ellipses for U == V");
  if (w.V == 0.0) return ellipse_onsite(w.U);
  if (w.U > w.V) {
    if (!(w.U > 0.0)) return {};
    double q = w.V / w.U;
    double a2 = 1.0 - q * q;
    if (!(a2 > 0.0)) return {};
    double a = 0.25 * std::sqrt(a2);
    return horizontal_pair(a, a, 0.25 * std::sqrt(2.0 * (1.0 - q)));
  }
  if (!(w.V > 0.0)) return {};
  double q = w.U / w.V;
  double k = 8.0 * (1.0 - q) / ((3.0 - q) * (3.0 - q));
  double b = 0.25 * std::sqrt(k);
  return vertical_pair(b, 0.5 * std::sqrt((1.0 - q) / (3.0 - q)), b);
}

Membership membership(const std::vector<EllipseSpec>& ellipses, const RealRdm& r, double tol) {
  bool on = false;
  for (const auto& e : ellipses) {
    double q = e.quadratic_form(r);
    if (q < -tol) return Membership::inside;
    if (std::abs(q) <= tol) on = true;
  }
  return on ? Membership::on : Membership::outside;
}

double distance_to_ellipse(const EllipseSpec& e, const RealRdm& r) {
  auto d2 = [&](double th) {
    RealRdm p = e.point(th);
    double dx = p.g11 - r.g11, dy = p.g12 - r.g12;
    return dx * dx + dy * dy;
  };
  const int n = 256;
  const double step = 2.0 * std::numbers::pi / n;
  int best = 0;
  double best_val = std::numeric_limits<double>::infinity();
  for (int k = 0; k < n; ++k) {
    double v = d2(k * step);
    if (v < best_val) best_val = v, best = k;
  }
  // Golden refinement inside the bracketing cells.
  double lo = (best - 1) * step, hi = (best + 1) * step;
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double c = hi - g * (hi - lo), d = lo + g * (hi - lo);
  double fc = d2(c), fd = d2(d);
  for (int it = 0; it < 80; ++it) {
    if (fc <= fd) {
      hi = d; d = c; fd = fc;
      c = hi - g * (hi - lo); fc = d2(c);
    } else {
      lo = c; c = d; fc = fd;
      d = lo + g * (hi - lo); fd = d2(d);
    }
  }
  return std::sqrt(std::min({best_val, fc, fd}));
}

double distance_to_ellipses(const std::vector<EllipseSpec>& es, const RealRdm& r) {
  double d = std::numeric_limits<double>::infinity();
  for (const auto& e : es) d = std::min(d, distance_to_ellipse(e, r));
  return d;
}

}  // namespace dimer::analytic
