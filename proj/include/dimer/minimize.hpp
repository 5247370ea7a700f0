#pragma once

#include <functional>
#include <vector>

namespace dimer::numeric {

struct Minimum1D {
  double x = 0.0;
  double value = 0.0;
};

// Brent minimization on [lo, hi] given an interior point whose value is
// below both ends; falls back to golden section otherwise.
Minimum1D brent(const std::function<double(double)>& f, double lo, double mid, double hi,
                double xtol = 1e-12, int max_iterations = 200);

// Scans n+1 equispaced points and refines every discrete local minimum.
// Endpoints are always candidates.
Minimum1D scan_minimize(const std::function<double(double)>& f, double lo, double hi, int n,
                        double xtol = 1e-12, int max_iterations = 200);

struct MinimumND {
  std::vector<double> x;
  double value = 0.0;
  int iterations = 0;
};

// Nelder-Mead simplex (GSL nmsimplex2).
MinimumND nelder_mead(const std::function<double(const std::vector<double>&)>& f,
                      std::vector<double> x0, std::vector<double> step, double size_tol = 1e-10,
                      int max_iterations = 2000);

}  // namespace dimer::numeric
