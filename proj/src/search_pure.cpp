#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "dimer/minimize.hpp"
#include "dimer/search.hpp"

namespace dimer::search {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool same_state(const SingletState& p, const SingletState& q) {
  // Equal up to a global sign.
  return (p.vector() - q.vector()).norm() < 1e-12 || (p.vector() + q.vector()).norm() < 1e-12;
}

void push_unique(std::vector<SingletState>& out, const SingletState& s) {
  for (const auto& t : out)
    if (same_state(t, s)) return;
  out.push_back(s);
}

// Roots s = c^2 of the eliminated constraint system at squared radius r2:
// with u = 2 y^2 / s one gets (u - 1)^2 = 1 - 4 r2.
std::pair<double, double> c2_roots(double y2, double r2) {
  double sq = std::sqrt(std::max(0.0, 1.0 - 4.0 * r2));
  double lo = 2.0 * y2 / (1.0 + sq);
  double hi = std::min(1.0, 2.0 * y2 * (1.0 + sq) / (4.0 * r2));
  return {lo, hi};
}

double w_expectation(const Mat3& wm, const CVec3& v) { return v.dot(wm.cast<cplx>() * v).real(); }

}  // namespace

void validate(const SearchOptions& opts) {
  if (opts.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (opts.max_iterations < 1) throw std::invalid_argument("max_iterations must be at least 1");
  if (!(opts.tolerance > 0.0)) throw std::invalid_argument("tolerance must be positive");
}

std::vector<SingletState> real_states_for(const RealRdm& target) {
  require_in_disk(target);
  const double g11 = std::clamp(target.g11, 0.0, 1.0);
  const double x = g11 - 0.5, y = target.g12;
  const double r2 = x * x + y * y;
  std::vector<SingletState> out;
  if (r2 == 0.0) {
    const double h = 1.0 / std::numbers::sqrt2;
    out.emplace_back(0.0, 0.0, 1.0);
    out.emplace_back(h, -h, 0.0);
    out.emplace_back(h, h, 0.0);
    return out;
  }
  if (y == 0.0) {
    double a = std::sqrt(g11), b = std::sqrt(1.0 - g11);
    out.push_back(SingletState::normalized(a, b, 0.0));
    out.push_back(SingletState::normalized(a, -b, 0.0));
    return out;
  }
  auto [s_lo, s_hi] = c2_roots(y * y, r2);
  struct Candidate {
    double residual;
    double a, b, c;
  };
  std::vector<Candidate> cands;
  for (double s : {s_lo, s_hi}) {
    double c = std::sqrt(s);
    double z = std::numbers::sqrt2 * y / c;
    double A = std::sqrt(std::max(0.0, g11 - 0.5 * s));
    double B = std::sqrt(std::max(0.0, 1.0 - g11 - 0.5 * s));
    for (double sa : {1.0, -1.0})
      for (double sb : {1.0, -1.0}) {
        double res = std::abs(sa * A + sb * B - z);
        // The larger amplitude comes from its square, the other from the linear constraint.
        double a = A >= B ? sa * A : z - sb * B;
        double b = A >= B ? z - sa * A : sb * B;
        cands.push_back({res / (1.0 + std::abs(z)), a, b, c});
      }
  }
  double best = kInf;
  for (const auto& k : cands) best = std::min(best, k.residual);
  const double accept = std::max(1e-6, 10.0 * best);
  for (const auto& k : cands)
    if (k.residual <= accept) push_unique(out, SingletState::normalized(k.a, k.b, k.c));
  return out;
}

PureResult min_pure_real(const InteractionParams& w, const RealRdm& target,
                         const SearchOptions& opts) {
  validate(w);
  validate(opts);
  const Mat3 wm = build_interaction_matrix(w);
  PureResult best{kInf, SingletState(1.0, 0.0, 0.0)};
  for (const auto& s : real_states_for(target)) {
    double v = expectation(wm, s);
    if (v < best.value) best = {v, s};
  }
  return best;
}

PureResult min_pure_complex_state(const InteractionParams& w, const Rdm& target,
                                  const SearchOptions& opts) {
  validate(w);
  validate(opts);
  require_in_disk(target);
  const Mat3 wm = build_interaction_matrix(w);
  const double g11 = std::clamp(target.g11, 0.0, 1.0);
  const double mz = std::abs(target.g12);
  if (mz == 0.0) return min_pure_real(w, RealRdm{g11, 0.0}, opts);

  // Gauge: c real and non-negative. With |a|, |b| fixed by g11 and c,
  // a + conj(b) = sqrt(2) g12 / c closes a triangle; sigma picks its orientation.
  const double theta = std::arg(target.g12);
  const double x = g11 - 0.5;
  auto [s_lo, s_hi] = c2_roots(mz * mz, x * x + mz * mz);
  s_hi = std::max(s_lo, std::min(s_hi, std::min(2.0 * g11, 2.0 * (1.0 - g11))));

  // Returns a zero vector when the triangle does not close.
  auto state = [&](double s, double sigma) {
    double c = std::sqrt(s);
    double A = std::sqrt(std::max(0.0, g11 - 0.5 * s));
    double B = std::sqrt(std::max(0.0, 1.0 - g11 - 0.5 * s));
    double m = std::numbers::sqrt2 * mz / c;
    cplx wv = std::polar(m, theta);
    cplx a;
    if (A == 0.0) {
      a = 0.0;
    } else if (B == 0.0) {
      a = wv;
    } else {
      double cd = (A * A + m * m - B * B) / (2.0 * A * m);
      if (std::abs(cd) > 1.0 + 1e-9) return CVec3(CVec3::Zero());
      a = std::polar(A, theta + sigma * std::acos(std::clamp(cd, -1.0, 1.0)));
    }
    cplx b = std::conj(wv - a);
    return CVec3(a, b, cplx(c, 0.0));
  };
  // Clamping near a degenerate triangle can leave a slightly infeasible
  // state; those are rejected by their RDM residual.
  auto value = [&](double s, double sigma) {
    CVec3 v = state(s, sigma);
    double n2 = v.squaredNorm();
    if (!(n2 > 0.0)) return kInf;
    Rdm got = rdm_from_state(SingletState(v / std::sqrt(n2)));
    if (std::abs(got.g11 - target.g11) + std::abs(got.g12 - target.g12) > 1e-12) return kInf;
    return w_expectation(wm, v) / n2;
  };

  const int n = std::max(8, 4 * opts.restarts);
  numeric::Minimum1D best{s_lo, kInf};
  double best_sigma = 1.0;
  for (double sigma : {1.0, -1.0}) {
    auto m = numeric::scan_minimize([&](double s) { return value(s, sigma); }, s_lo, s_hi, n,
                                    1e-14, opts.max_iterations);
    if (m.value < best.value) best = m, best_sigma = sigma;
  }
  CVec3 v = state(best.x, best_sigma);
  return {best.value, SingletState(v / v.norm())};
}

double min_pure_complex(const InteractionParams& w, const Rdm& target, const SearchOptions& opts) {
  return min_pure_complex_state(w, target, opts).value;
}

double min_pure_complex_reduced(const InteractionParams& w, const RealRdm& target,
                                const SearchOptions& opts) {
  validate(w);
  validate(opts);
  require_in_disk(target);
  const double x = target.g11 - 0.5;
  const double vmax = std::sqrt(std::max(0.0, 0.25 - x * x - target.g12 * target.g12));
  auto f = [&](double v) {
    return min_pure_complex(w, Rdm{target.g11, cplx(target.g12, v)}, opts);
  };
  if (vmax == 0.0) return f(0.0);
  // Complex conjugation maps Im(g12) to -Im(g12) at equal interaction energy.
  const int n = std::max(4, opts.restarts);
  return numeric::scan_minimize(f, 0.0, vmax, n, 1e-12, opts.max_iterations).value;
}

}  // namespace dimer::search
