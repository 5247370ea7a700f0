#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace dimer {

using cplx = std::complex<double>;
using Mat3 = Eigen::Matrix3d;
using CMat3 = Eigen::Matrix3cd;
using CVec3 = Eigen::Vector3cd;

struct OneBodyParams {
  double t = 0.0;
  double eps1 = 0.0;
  double eps2 = 0.0;
};

struct InteractionParams {
  double U = 0.0;
  double V = 0.0;
  double X = 0.0;

  bool onsite() const { return V == 0.0 && X == 0.0; }
};

void validate(const OneBodyParams& p);
void validate(const InteractionParams& w);

// Amplitudes over (Phi1, Phi2, Phi3):
//   Phi1 = c+_{1u} c+_{1d}|0>, Phi2 = c+_{2u} c+_{2d}|0>,
//   Phi3 = (c+_{1u} c+_{2d} - c+_{1d} c+_{2u})|0>/sqrt(2).
class SingletState {
 public:
  static constexpr double kNormTolerance = 1e-12;

  SingletState(cplx a, cplx b, cplx c);
  explicit SingletState(const CVec3& v);
  // Rescales any nonzero vector to unit norm.
  static SingletState normalized(cplx a, cplx b, cplx c);

  cplx a() const { return v_(0); }
  cplx b() const { return v_(1); }
  cplx c() const { return v_(2); }
  const CVec3& vector() const { return v_; }
  bool is_real(double tol = 0.0) const;

 private:
  CVec3 v_;
};

class DensityOperator {
 public:
  static constexpr double kHermitianTolerance = 1e-12;
  static constexpr double kEigenvalueFloor = -1e-10;
  static constexpr double kTraceTolerance = 1e-12;

  explicit DensityOperator(const CMat3& m);
  static DensityOperator projector(const SingletState& s);

  const CMat3& matrix() const { return m_; }
  int rank(double tol = 1e-9) const;

 private:
  CMat3 m_;
};

// Per-spin block, trace one: g22 = 1 - g11.
struct Rdm {
  double g11 = 0.5;
  cplx g12 = 0.0;
};

struct RealRdm {
  double g11 = 0.5;
  double g12 = 0.0;
};

// R is the distance to the disk boundary, phi the polar angle around (1/2, 0).
struct PolarRdm {
  double R = 0.5;
  double phi = 0.0;
};

constexpr double kDiskTolerance = 1e-12;

double disk_excess(double g11, double abs_g12);
bool in_disk(const Rdm& r, double tol = kDiskTolerance);
bool in_disk(const RealRdm& r, double tol = kDiskTolerance);
void require_in_disk(const Rdm& r);
void require_in_disk(const RealRdm& r);

inline RealRdm real_part(const Rdm& r) { return {r.g11, r.g12.real()}; }
inline Rdm to_complex(const RealRdm& r) { return {r.g11, cplx(r.g12, 0.0)}; }

Mat3 build_one_body_matrix(const OneBodyParams& p);
Mat3 build_interaction_matrix(const InteractionParams& w);
Mat3 build_hamiltonian(const OneBodyParams& p, const InteractionParams& w);

// One-body operator c+_{j,up} c_{i,up} restricted to the singlet sector,
// computed from the Fock-space action on the basis determinants.
const CMat3& hopping_operator(int i, int j);

Rdm rdm_from_state(const SingletState& s);
Rdm rdm_from_density(const DensityOperator& g);
// Linear map without density-operator validation.
Rdm rdm_of_operator(const CMat3& m);

PolarRdm polar_from_cartesian(const RealRdm& r);
RealRdm cartesian_from_polar(const PolarRdm& p);
double canonical_angle(double phi);

double expectation(const Mat3& m, const SingletState& s);
double expectation(const Mat3& m, const DensityOperator& g);

struct GroundState {
  double energy = 0.0;
  std::vector<SingletState> states;
  int degeneracy = 0;
};

constexpr double kDegeneracyRelativeGap = 1e-9;

GroundState ground_state(const OneBodyParams& p, const InteractionParams& w);

// 2 Tr[h1 gamma] with h1 = [[eps1, -t], [-t, eps2]].
double one_body_energy(const OneBodyParams& p, const RealRdm& r);

}  // namespace dimer
