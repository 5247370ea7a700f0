#include "dimer/model.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace dimer {

namespace {

// Two sites, two spins: mode index = 2*(site) + spin, spin 0 = up.
constexpr int kModes = 4;
constexpr int kFockDim = 1 << kModes;

int mode(int site, int spin) { return 2 * site + spin; }

using FockVector = std::array<cplx, kFockDim>;

int parity_below(unsigned occ, int p) {
  unsigned below = occ & ((1u << p) - 1u);
  return __builtin_popcount(below) % 2 == 0 ? 1 : -1;
}

FockVector create(int p, const FockVector& in) {
  FockVector out{};
  for (unsigned occ = 0; occ < kFockDim; ++occ) {
    if (in[occ] == 0.0 || (occ >> p) & 1u) continue;
    out[occ | (1u << p)] += double(parity_below(occ, p)) * in[occ];
  }
  return out;
}

FockVector annihilate(int p, const FockVector& in) {
  FockVector out{};
  for (unsigned occ = 0; occ < kFockDim; ++occ) {
    if (in[occ] == 0.0 || !((occ >> p) & 1u)) continue;
    out[occ & ~(1u << p)] += double(parity_below(occ, p)) * in[occ];
  }
  return out;
}

FockVector vacuum() {
  FockVector v{};
  v[0] = 1.0;
  return v;
}

FockVector add(const FockVector& x, const FockVector& y, cplx alpha = 1.0) {
  FockVector out;
  for (int k = 0; k < kFockDim; ++k) out[k] = x[k] + alpha * y[k];
  return out;
}

cplx inner(const FockVector& x, const FockVector& y) {
  cplx s = 0.0;
  for (int k = 0; k < kFockDim; ++k) s += std::conj(x[k]) * y[k];
  return s;
}

std::array<FockVector, 3> singlet_basis() {
  const FockVector vac = vacuum();
  // c+_p c+_q |0> means apply c+_q first.
  auto pair = [&](int p, int q) { return create(p, create(q, vac)); };
  FockVector phi1 = pair(mode(0, 0), mode(0, 1));
  FockVector phi2 = pair(mode(1, 0), mode(1, 1));
  FockVector phi3 = add(pair(mode(0, 0), mode(1, 1)), pair(mode(0, 1), mode(1, 0)), -1.0);
  for (auto& x : phi3) x /= std::numbers::sqrt2;
  return {phi1, phi2, phi3};
}

template <class Op>
CMat3 singlet_matrix(Op op) {
  static const auto basis = singlet_basis();
  CMat3 m;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m(a, b) = inner(basis[a], op(basis[b]));
  return m;
}

// c+_{j,spin} c_{i,spin} on the singlet basis.
CMat3 compute_hopping(int i, int j, int spin) {
  return singlet_matrix([&](const FockVector& v) {
    return create(mode(j, spin), annihilate(mode(i, spin), v));
  });
}

const std::array<CMat3, 4>& hopping_table() {
  static const std::array<CMat3, 4> table = {compute_hopping(0, 0, 0), compute_hopping(0, 1, 0),
                                             compute_hopping(1, 0, 0), compute_hopping(1, 1, 0)};
  return table;
}

// Spin-summed sum_s c+_{j,s} c_{i,s}.
CMat3 spin_summed(int i, int j) { return compute_hopping(i, j, 0) + compute_hopping(i, j, 1); }

void require_finite(double x, const char* name) {
  if (!std::isfinite(x)) throw std::invalid_argument(std::string(name) + " must be finite");
}

}  // namespace

void validate(const OneBodyParams& p) {
  require_finite(p.t, "t");
  require_finite(p.eps1, "eps1");
  require_finite(p.eps2, "eps2");
}

void validate(const InteractionParams& w) {
  require_finite(w.U, "U");
  require_finite(w.V, "V");
  require_finite(w.X, "X");
}

SingletState::SingletState(cplx a, cplx b, cplx c) : SingletState(CVec3(a, b, c)) {}

SingletState::SingletState(const CVec3& v) : v_(v) {
  if (!v.allFinite()) throw std::invalid_argument("state amplitudes must be finite");
  if (std::abs(v.squaredNorm() - 1.0) > kNormTolerance)
    throw std::invalid_argument("state is not normalized");
}

SingletState SingletState::normalized(cplx a, cplx b, cplx c) {
  CVec3 v(a, b, c);
  double n = v.norm();
  if (!(n > 0.0)) throw std::invalid_argument("cannot normalize a zero vector");
  return SingletState(v / n);
}

bool SingletState::is_real(double tol) const {
  return v_.imag().cwiseAbs().maxCoeff() <= tol;
}

DensityOperator::DensityOperator(const CMat3& m) : m_(m) {
  if (!m.allFinite()) throw std::invalid_argument("density operator must be finite");
  if ((m - m.adjoint()).cwiseAbs().maxCoeff() > kHermitianTolerance)
    throw std::invalid_argument("density operator is not Hermitian");
  if (std::abs(m.trace().real() - 1.0) > kTraceTolerance)
    throw std::invalid_argument("density operator trace differs from one");
  CMat3 herm = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<CMat3> es(herm, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < kEigenvalueFloor)
    throw std::invalid_argument("density operator has a negative eigenvalue");
}

DensityOperator DensityOperator::projector(const SingletState& s) {
  return DensityOperator(s.vector() * s.vector().adjoint());
}

int DensityOperator::rank(double tol) const {
  Eigen::SelfAdjointEigenSolver<CMat3> es(CMat3(0.5 * (m_ + m_.adjoint())),
                                          Eigen::EigenvaluesOnly);
  int r = 0;
  for (int k = 0; k < 3; ++k) r += es.eigenvalues()(k) > tol ? 1 : 0;
  return r;
}

double disk_excess(double g11, double abs_g12) {
  double x = g11 - 0.5;
  return x * x + abs_g12 * abs_g12 - 0.25;
}

bool in_disk(const Rdm& r, double tol) {
  return std::isfinite(r.g11) && std::isfinite(r.g12.real()) && std::isfinite(r.g12.imag()) &&
         disk_excess(r.g11, std::abs(r.g12)) <= tol;
}

bool in_disk(const RealRdm& r, double tol) {
  return std::isfinite(r.g11) && std::isfinite(r.g12) &&
         disk_excess(r.g11, std::abs(r.g12)) <= tol;
}

void require_in_disk(const Rdm& r) {
  if (!in_disk(r)) throw std::domain_error("1RDM lies outside the representable disk");
}

void require_in_disk(const RealRdm& r) {
  if (!in_disk(r)) throw std::domain_error("1RDM lies outside the representable disk");
}

Mat3 build_one_body_matrix(const OneBodyParams& p) {
  validate(p);
  static const CMat3 n1 = spin_summed(0, 0);
  static const CMat3 n2 = spin_summed(1, 1);
  static const CMat3 hop = spin_summed(0, 1) + spin_summed(1, 0);
  CMat3 h = p.eps1 * n1 + p.eps2 * n2 - p.t * hop;
  return h.real();
}

Mat3 build_interaction_matrix(const InteractionParams& w) {
  validate(w);
  Mat3 m;
  m << w.U, w.V, w.X,
       w.V, w.U, w.X,
       w.X, w.X, 0.0;
  return m;
}

Mat3 build_hamiltonian(const OneBodyParams& p, const InteractionParams& w) {
  return build_one_body_matrix(p) + build_interaction_matrix(w);
}

const CMat3& hopping_operator(int i, int j) {
  if (i < 0 || i > 1 || j < 0 || j > 1) throw std::out_of_range("site index must be 0 or 1");
  return hopping_table()[2 * i + j];
}

Rdm rdm_of_operator(const CMat3& m) {
  // gamma_ij = Tr[m c+_j c_i]
  auto tr = [&](int i, int j) { return (m * hopping_operator(i, j)).trace(); };
  return {tr(0, 0).real(), tr(0, 1)};
}

Rdm rdm_from_state(const SingletState& s) {
  const CVec3& v = s.vector();
  auto ev = [&](int i, int j) { return v.dot(hopping_operator(i, j) * v); };
  return {ev(0, 0).real(), ev(0, 1)};
}

Rdm rdm_from_density(const DensityOperator& g) { return rdm_of_operator(g.matrix()); }

double canonical_angle(double phi) {
  const double two_pi = 2.0 * std::numbers::pi;
  double a = std::fmod(phi, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a = 0.0;
  return a;
}

PolarRdm polar_from_cartesian(const RealRdm& r) {
  require_in_disk(r);
  double x = r.g11 - 0.5;
  double rho = std::hypot(x, r.g12);
  double R = std::max(0.0, 0.5 - rho);
  double phi = rho == 0.0 ? 0.0 : canonical_angle(std::atan2(r.g12, x));
  return {R, phi};
}

RealRdm cartesian_from_polar(const PolarRdm& p) {
  if (!(p.R >= 0.0 && p.R <= 0.5) || !std::isfinite(p.phi))
    throw std::domain_error("polar coordinates outside the disk");
  double rho = 0.5 - p.R;
  return {0.5 + rho * std::cos(p.phi), rho * std::sin(p.phi)};
}

double expectation(const Mat3& m, const SingletState& s) {
  const CVec3& v = s.vector();
  return v.dot(m.cast<cplx>() * v).real();
}

double expectation(const Mat3& m, const DensityOperator& g) {
  return (g.matrix() * m.cast<cplx>()).trace().real();
}

GroundState ground_state(const OneBodyParams& p, const InteractionParams& w) {
  Mat3 h = build_hamiltonian(p, w);
  Eigen::SelfAdjointEigenSolver<Mat3> es(h);
  if (es.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  const auto& ev = es.eigenvalues();
  double range = ev(2) - ev(0);
  double gap_tol = kDegeneracyRelativeGap * range;
  GroundState gs;
  gs.energy = ev(0);
  for (int k = 0; k < 3; ++k) {
    if (ev(k) - ev(0) > gap_tol) break;
    Eigen::Vector3d v = es.eigenvectors().col(k);
    gs.states.push_back(SingletState::normalized(v(0), v(1), v(2)));
  }
  gs.degeneracy = static_cast<int>(gs.states.size());
  return gs;
}

double one_body_energy(const OneBodyParams& p, const RealRdm& r) {
  return 2.0 * (p.eps1 * r.g11 + p.eps2 * (1.0 - r.g11) - 2.0 * p.t * r.g12);
}

}  // namespace dimer
