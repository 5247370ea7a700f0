#include "dimer/minimize.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include <gsl/gsl_errno.h>
#include <gsl/gsl_min.h>
#include <gsl/gsl_multimin.h>

namespace dimer::numeric {

namespace {

struct GslErrorsOff {
  GslErrorsOff() { gsl_set_error_handler_off(); }
};
const GslErrorsOff gsl_errors_off;

double call_1d(double x, void* params) {
  auto* f = static_cast<const std::function<double(double)>*>(params);
  return (*f)(x);
}

double call_nd(const gsl_vector* v, void* params) {
  auto* f = static_cast<const std::function<double(const std::vector<double>&)>*>(params);
  std::vector<double> x(v->size);
  for (size_t k = 0; k < v->size; ++k) x[k] = gsl_vector_get(v, k);
  double y = (*f)(x);
  return std::isfinite(y) ? y : std::numeric_limits<double>::max();
}

struct MinimizerDeleter {
  void operator()(gsl_min_fminimizer* m) const { gsl_min_fminimizer_free(m); }
};
struct SimplexDeleter {
  void operator()(gsl_multimin_fminimizer* m) const { gsl_multimin_fminimizer_free(m); }
};
struct VectorDeleter {
  void operator()(gsl_vector* v) const { gsl_vector_free(v); }
};

Minimum1D golden(const std::function<double(double)>& f, double lo, double hi, double xtol,
                 int max_iterations) {
  const double g = 0.5 * (std::sqrt(5.0) - 1.0);
  double a = lo, b = hi;
  double c = b - g * (b - a), d = a + g * (b - a);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iterations && b - a > xtol; ++it) {
    if (fc <= fd) {
      b = d; d = c; fd = fc;
      c = b - g * (b - a); fc = f(c);
    } else {
      a = c; c = d; fc = fd;
      d = a + g * (b - a); fd = f(d);
    }
  }
  return fc <= fd ? Minimum1D{c, fc} : Minimum1D{d, fd};
}

}  // namespace

Minimum1D brent(const std::function<double(double)>& f, double lo, double mid, double hi,
                double xtol, int max_iterations) {
  if (!(lo < hi)) return {lo, f(lo)};
  double flo = f(lo), fmid = f(mid), fhi = f(hi);
  Minimum1D best = flo <= fhi ? Minimum1D{lo, flo} : Minimum1D{hi, fhi};
  if (fmid < best.value) best = {mid, fmid};
  if (!(mid > lo && mid < hi && fmid < flo && fmid < fhi)) {
    Minimum1D gs = golden(f, lo, hi, xtol, max_iterations);
    return gs.value < best.value ? gs : best;
  }
  std::unique_ptr<gsl_min_fminimizer, MinimizerDeleter> m(
      gsl_min_fminimizer_alloc(gsl_min_fminimizer_brent));
  gsl_function fn{&call_1d, const_cast<std::function<double(double)>*>(&f)};
  if (gsl_min_fminimizer_set_with_values(m.get(), &fn, mid, fmid, lo, flo, hi, fhi) != GSL_SUCCESS)
    return best;
  for (int it = 0; it < max_iterations; ++it) {
    if (gsl_min_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    double a = gsl_min_fminimizer_x_lower(m.get());
    double b = gsl_min_fminimizer_x_upper(m.get());
    if (gsl_min_test_interval(a, b, xtol, 0.0) == GSL_SUCCESS) break;
  }
  Minimum1D r{gsl_min_fminimizer_x_minimum(m.get()), gsl_min_fminimizer_f_minimum(m.get())};
  return r.value < best.value ? r : best;
}

Minimum1D scan_minimize(const std::function<double(double)>& f, double lo, double hi, int n,
                        double xtol, int max_iterations) {
  if (n < 2) throw std::invalid_argument("scan needs at least two intervals");
  if (!(hi > lo)) return {lo, f(lo)};
  std::vector<double> xs(n + 1), ys(n + 1);
  for (int k = 0; k <= n; ++k) {
    xs[k] = k == n ? hi : lo + (hi - lo) * k / n;
    ys[k] = f(xs[k]);
  }
  Minimum1D best{xs[0], ys[0]};
  for (int k = 1; k <= n; ++k)
    if (ys[k] < best.value) best = {xs[k], ys[k]};
  for (int k = 1; k < n; ++k) {
    bool left = ys[k] <= ys[k - 1], right = ys[k] <= ys[k + 1];
    bool strict = ys[k] < ys[k - 1] || ys[k] < ys[k + 1];
    if (left && right && strict) {
      Minimum1D r = brent(f, xs[k - 1], xs[k], xs[k + 1], xtol, max_iterations);
      if (r.value < best.value) best = r;
    }
  }
  return best;
}

MinimumND nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                      std::vector<double> x0, std::vector<double> step, double size_tol,
                      int max_iterations) {
  const size_t n = x0.size();
  if (n == 0 || step.size() != n) throw std::invalid_argument("bad simplex dimensions");
  std::unique_ptr<gsl_vector, VectorDeleter> x(gsl_vector_alloc(n)), ss(gsl_vector_alloc(n));
  for (size_t k = 0; k < n; ++k) {
    gsl_vector_set(x.get(), k, x0[k]);
    gsl_vector_set(ss.get(), k, step[k]);
  }
  std::unique_ptr<gsl_multimin_fminimizer, SimplexDeleter> m(
      gsl_multimin_fminimizer_alloc(gsl_multimin_fminimizer_nmsimplex2, n));
  gsl_multimin_function fn{&call_nd, n,
                           const_cast<std::function<double(const std::vector<double>&)>*>(&f)};
  gsl_multimin_fminimizer_set(m.get(), &fn, x.get(), ss.get());
  int it = 0;
  for (; it < max_iterations; ++it) {
    if (gsl_multimin_fminimizer_iterate(m.get()) != GSL_SUCCESS) break;
    double size = gsl_multimin_fminimizer_size(m.get());
    if (gsl_multimin_test_size(size, size_tol) == GSL_SUCCESS) break;
  }
  MinimumND r;
  r.x.resize(n);
  for (size_t k = 0; k < n; ++k) r.x[k] = gsl_vector_get(m.get()->x, k);
  r.value = m.get()->fval;
  r.iterations = it;
  return r;
}

}  // namespace dimer::numeric
