#include "dimer/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace dimer {

std::string to_string(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::FR_pure: return "fr-pure";
    case FunctionalKind::FR_ens: return "fr-ens";
    case FunctionalKind::FC_pure: return "fc-pure";
    case FunctionalKind::FC_ens: return "fc-ens";
    case FunctionalKind::FCtilde_pure: return "fct-pure";
    case FunctionalKind::FCtilde_ens: return "fct-ens";
  }
  throw std::logic_error("unknown functional kind");
}

FunctionalKind parse_kind(const std::string& s) {
  for (FunctionalKind k : kAllKinds)
    if (to_string(k) == s) return k;
  throw std::invalid_argument("unknown functional kind '" + s + "'");
}

bool is_pure(FunctionalKind k) {
  return k == FunctionalKind::FR_pure || k == FunctionalKind::FC_pure ||
         k == FunctionalKind::FCtilde_pure;
}

FunctionalKind ensemble_partner(FunctionalKind k) {
  switch (k) {
    case FunctionalKind::FR_pure: return FunctionalKind::FR_ens;
    case FunctionalKind::FC_pure: return FunctionalKind::FC_ens;
    case FunctionalKind::FCtilde_pure: return FunctionalKind::FCtilde_ens;
    default: return k;
  }
}

}  // namespace dimer

namespace dimer::analytic {

namespace {

double sgn(double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); }

}  // namespace

double center_value(const InteractionParams& w) {
  // The direction-dependent limit is piecewise linear in sin^2(phi);
  // its minimum sits at sin^2 = 0, 1 or the kink, which gives this value.
  return std::min(0.0, w.U - std::abs(w.V));
}

double f_r_pure_onsite(double U, const RealRdm& r) {
  require_in_disk(r);
  if (!std::isfinite(U)) throw std::invalid_argument("U must be finite");
  if (U == 0.0) return 0.0;
  double x = r.g11 - 0.5, y = r.g12;
  double r2 = x * x + y * y;
  if (r2 == 0.0) return std::min(0.0, U);
  double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * r2));
  return U * (x * x + 0.5 * y * y * (1.0 - sgn(U) * root)) / r2;
}

double f_ctilde_pure_onsite(double U, const Rdm& r) {
  require_in_disk(r);
  return f_r_pure_onsite(U, RealRdm{r.g11, std::abs(r.g12)});
}

double f_c_pure_onsite(double U, const RealRdm& r) {
  require_in_disk(r);
  if (!(U > 0.0)) return f_r_pure_onsite(U, r);
  double g11 = r.g11, y2 = r.g12 * r.g12;
  if (y2 <= g11 * (1.0 - 2.0 * g11)) return U * (1.0 - 2.0 * g11);
  if (y2 <= g11 * (3.0 - 2.0 * g11) - 1.0) return U * (2.0 * g11 - 1.0);
  return f_r_pure_onsite(U, r);
}

double f_r_pure_general(const InteractionParams& w, const PolarRdm& p) {
  validate(w);
  if (!(p.R >= 0.0 && p.R <= 0.5) || !std::isfinite(p.phi))
    throw std::domain_error("polar coordinates outside the disk");
  double rho = 1.0 - 2.0 * p.R;
  double s = std::sin(p.phi);
  double q = s * s;
  double root = std::sqrt(4.0 * p.R * (1.0 - p.R));
  return w.U + std::numbers::sqrt2 * w.X * rho * s + 0.5 * (w.V - w.U) * q -
         0.5 * root * std::abs((w.V - w.U) * q - 2.0 * w.V);
}

double f_r_pure_general(const InteractionParams& w, const RealRdm& r) {
  validate(w);
  require_in_disk(r);
  double x = r.g11 - 0.5, y = r.g12;
  double r2 = x * x + y * y;
  if (r2 == 0.0) return center_value(w);
  double root = std::sqrt(std::max(0.0, 0.25 - r2));
  double ratio = y * y / r2;
  return w.U + 2.0 * std::numbers::sqrt2 * w.X * y + 0.5 * (w.V - w.U) * ratio -
         root * std::abs(ratio * (w.V - w.U) - 2.0 * w.V);
}

C2Candidates c2_candidates(const RealRdm& r) {
  require_in_disk(r);
  double x = r.g11 - 0.5, y = r.g12;
  double r2 = x * x + y * y;
  if (r2 == 0.0) throw std::domain_error("c^2 candidates are undefined at the disk center");
  double root = std::sqrt(std::max(0.0, 1.0 - 4.0 * r2));
  C2Candidates c;
  c.minus = 2.0 * y * y / (1.0 + root);
  c.plus = std::min(1.0, y * y * (1.0 + root) / (2.0 * r2));
  return c;
}

}  // namespace dimer::analytic
