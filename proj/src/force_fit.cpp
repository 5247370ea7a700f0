#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "dimer/varrep.hpp"

namespace dimer::varrep {

ForceFit force_fit(const InteractionParams& w, double phi, double r_min, double r_max, int points) {
  validate(w);
  if (!(r_min > 0.0 && r_min < r_max && r_max <= 0.05))
    throw std::invalid_argument("force fit needs 0 < r_min < r_max <= 0.05");
  if (points < 8) throw std::invalid_argument("force fit needs at least 8 points");
  auto F = [&](double R) { return analytic::f_r_pure_general(w, PolarRdm{R, phi}); };

  std::vector<double> Rs(points), dF(points);
  for (int k = 0; k < points; ++k) {
    double R = std::exp(std::log(r_min) + (std::log(r_max) - std::log(r_min)) * k / (points - 1));
    double h = 1e-3 * R;
    Rs[k] = R;
    dF[k] = (F(R + h) - F(R - h)) / (2.0 * h);
  }

  ForceFit fit;
  fit.phi = phi;
  fit.analytic_prefactor = analytic::force_prefactor(w, phi);
  const double scale = std::max({1.0, std::abs(w.U), std::abs(w.V), std::abs(w.X)});

  // dF sqrt(R) = -C + b1 sqrt(R) + b2 R isolates the divergent coefficient.
  Eigen::MatrixXd A(points, 3);
  Eigen::VectorXd y(points);
  for (int k = 0; k < points; ++k) {
    double s = std::sqrt(Rs[k]);
    A.row(k) << 1.0, s, Rs[k];
    y(k) = dF[k] * s;
  }
  Eigen::VectorXd lin = A.colPivHouseholderQr().solve(y);
  double c_lin = -lin(0);
  if (std::abs(c_lin) < 1e-8 * scale) {
    fit.bounded = true;
    fit.prefactor = std::abs(c_lin);
    fit.exponent = 0.0;
    fit.residual = std::sqrt((A * lin - y).squaredNorm() / points);
    fit.flagged = fit.residual > kForceFitResidualThreshold * scale;
    return fit;
  }

  // log|dF| = log C + p log R + k1 sqrt(R) + k2 R; the last two absorb
  // the subleading terms of the expansion.
  Eigen::MatrixXd B(points, 4);
  Eigen::VectorXd z(points);
  for (int k = 0; k < points; ++k) {
    B.row(k) << 1.0, std::log(Rs[k]), std::sqrt(Rs[k]), Rs[k];
    z(k) = std::log(std::abs(dF[k]));
  }
  Eigen::VectorXd c = B.colPivHouseholderQr().solve(z);
  fit.prefactor = std::exp(c(0));
  fit.exponent = c(1);
  fit.residual = std::sqrt((B * c - z).squaredNorm() / points);
  fit.flagged = fit.residual > kForceFitResidualThreshold;
  return fit;
}

}  // namespace dimer::varrep
