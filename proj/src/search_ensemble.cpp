#include <cmath>
#include <limits>
#include <vector>

#include "dimer/search.hpp"

namespace dimer::search {

namespace {

using MatX = Eigen::MatrixXd;
using VecX = Eigen::VectorXd;

// Hermitian basis: 3 diagonal, 3 real symmetric, 3 imaginary antisymmetric.
std::vector<CMat3> hermitian_basis(bool complex_entries) {
  std::vector<CMat3> out;
  for (int k = 0; k < 3; ++k) {
    CMat3 e = CMat3::Zero();
    e(k, k) = 1.0;
    out.push_back(e);
  }
  const int pairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  for (auto& p : pairs) {
    CMat3 e = CMat3::Zero();
    e(p[0], p[1]) = e(p[1], p[0]) = 1.0;
    out.push_back(e);
  }
  if (complex_entries)
    for (auto& p : pairs) {
      CMat3 e = CMat3::Zero();
      e(p[0], p[1]) = cplx(0.0, -1.0);
      e(p[1], p[0]) = cplx(0.0, 1.0);
      out.push_back(e);
    }
  return out;
}

// Linear constraint values of a Hermitian operator: trace, g11, Re g12 and optionally Im g12.
VecX constraint_values(const CMat3& m, bool fix_imag) {
  Rdm r = rdm_of_operator(m);
  VecX v(fix_imag ? 4 : 3);
  v(0) = m.trace().real();
  v(1) = r.g11;
  v(2) = r.g12.real();
  if (fix_imag) v(3) = r.g12.imag();
  return v;
}

// Pure state reproducing an arbitrary complex target: a real state for |g12|,
// then a -> a e^{i theta}, b -> b e^{-i theta} rotates g12 by e^{i theta}.
SingletState pure_state_for(const Rdm& target) {
  double mz = std::abs(target.g12);
  SingletState s = real_states_for(RealRdm{target.g11, mz}).front();
  cplx rot = mz > 0.0 ? target.g12 / mz : cplx(1.0, 0.0);
  return SingletState(CVec3(s.a() * rot, s.b() * std::conj(rot), s.c()));
}

bool cholesky_ok(const CMat3& m, Eigen::LLT<CMat3>& llt) {
  llt.compute(m);
  return llt.info() == Eigen::Success;
}

double log_det(const Eigen::LLT<CMat3>& llt) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) s += 2.0 * std::log(llt.matrixL()(k, k).real());
  return s;
}

}  // namespace

EnsembleResult min_ensemble(const InteractionParams& w, const Rdm& target,
                            const SearchOptions& opts, EnsembleField field) {
  validate(w);
  validate(opts);
  require_in_disk(target);
  if (field == EnsembleField::real && target.g12.imag() != 0.0)
    throw std::invalid_argument("real density operators cannot reach a complex g12");

  const Mat3 wm = build_interaction_matrix(w);
  const CMat3 wc = wm.cast<cplx>();
  const bool fix_imag = field != EnsembleField::complex_free_imaginary;
  const auto basis = hermitian_basis(field != EnsembleField::real);

  const double x = target.g11 - 0.5;
  const double rho = std::abs(cplx(x, std::abs(target.g12)));
  const double R = 0.5 - rho;
  const CMat3 center = CMat3::Identity() / 3.0;

  // Strictly feasible start: mix the maximally mixed operator (center of the
  // disk) with a pure state for the stretched target.
  const double lambda = std::max(0.0, R);
  CMat3 g0;
  if (lambda <= 1e-14) {
    SingletState s = pure_state_for(target);
    g0 = s.vector() * s.vector().adjoint();
  } else {
    Rdm stretched{0.5 + x / (1.0 - lambda), target.g12 / (1.0 - lambda)};
    SingletState s = pure_state_for(stretched);
    g0 = lambda * center + (1.0 - lambda) * s.vector() * s.vector().adjoint();
  }

  // Null space of the constraint map inside the chosen operator space.
  const int n = static_cast<int>(basis.size());
  const int m = fix_imag ? 4 : 3;
  MatX A(m, n);
  for (int k = 0; k < n; ++k) A.col(k) = constraint_values(basis[k], fix_imag);
  Eigen::FullPivLU<MatX> lu(A);
  MatX N = lu.kernel();
  std::vector<CMat3> dirs;
  for (int c = 0; c < N.cols(); ++c) {
    CMat3 d = CMat3::Zero();
    for (int k = 0; k < n; ++k) d += N(k, c) * basis[k];
    dirs.push_back(d);
  }
  const int k = static_cast<int>(dirs.size());
  VecX cost(k);
  for (int i = 0; i < k; ++i) cost(i) = (wc * dirs[i]).trace().real();

  auto gamma_at = [&](const VecX& th) {
    CMat3 g = g0;
    for (int i = 0; i < k; ++i) g += th(i) * dirs[i];
    return g;
  };

  VecX theta = VecX::Zero(k);
  int steps = 0;
  Eigen::LLT<CMat3> llt;
  const bool interior = lambda > 1e-14 && cholesky_ok(g0, llt);
  if (interior && k > 0) {
    const double scale = std::max({std::abs(w.U), std::abs(w.V), std::abs(w.X), 1e-300});
    const double gap_target = std::min(opts.tolerance, 1e-10) * std::max(1.0, scale);
    double t = 1.0 / scale;
    const double t_max = 3.0 / gap_target;
    auto barrier = [&](const VecX& th, double tt, bool& ok) {
      Eigen::LLT<CMat3> l;
      ok = cholesky_ok(gamma_at(th), l);
      return ok ? tt * cost.dot(th) - log_det(l) : std::numeric_limits<double>::infinity();
    };
    while (true) {
      for (int it = 0; it < opts.max_iterations; ++it) {
        CMat3 g = gamma_at(theta);
        if (!cholesky_ok(g, llt)) break;
        CMat3 ginv = llt.solve(CMat3::Identity());
        std::vector<CMat3> gd(k);
        for (int i = 0; i < k; ++i) gd[i] = ginv * dirs[i];
        VecX grad(k);
        MatX hess(k, k);
        for (int i = 0; i < k; ++i) {
          grad(i) = t * cost(i) - gd[i].trace().real();
          for (int j = 0; j <= i; ++j) hess(i, j) = hess(j, i) = (gd[i] * gd[j]).trace().real();
        }
        VecX step = -hess.ldlt().solve(grad);
        double dec2 = -grad.dot(step);
        ++steps;
        if (!(dec2 > 2e-15)) break;
        bool ok = false;
        double f0 = barrier(theta, t, ok);
        double alpha = 1.0;
        for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
          double f1 = barrier(theta + alpha * step, t, ok);
          if (ok && f1 <= f0 - 0.25 * alpha * dec2) break;
        }
        if (!ok) break;
        theta += alpha * step;
      }
      if (t >= t_max) break;
      t = std::min(t * 10.0, t_max);
    }
  }

  CMat3 g = gamma_at(theta);
  g = 0.5 * (g + g.adjoint());
  g /= g.trace().real();
  EnsembleResult res;
  res.value = (wc * g).trace().real();
  res.argmin = DensityOperator(g);
  res.newton_steps = steps;
  return res;
}

}  // namespace dimer::search
