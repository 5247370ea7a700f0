#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "dimer/model.hpp"
#include "dimer/serialize.hpp"

using namespace dimer;

namespace {

const double kS2 = std::sqrt(2.0);

// Hand-derived second-quantized action on the singlet basis.
Rdm rdm_oracle(cplx a, cplx b, cplx c) {
  return {std::norm(a) + 0.5 * std::norm(c), (a * std::conj(c) + std::conj(b) * c) / kS2};
}

// Closed-form eigenvalues of a real symmetric 3x3 matrix (trigonometric cubic).
std::array<double, 3> cubic_eigenvalues(const Mat3& A) {
  double q = A.trace() / 3.0;
  double p1 = A(0, 1) * A(0, 1) + A(0, 2) * A(0, 2) + A(1, 2) * A(1, 2);
  double p2 = (A(0, 0) - q) * (A(0, 0) - q) + (A(1, 1) - q) * (A(1, 1) - q) +
              (A(2, 2) - q) * (A(2, 2) - q) + 2.0 * p1;
  double p = std::sqrt(p2 / 6.0);
  if (p == 0.0) return {q, q, q};
  Mat3 B = (A - q * Mat3::Identity()) / p;
  double r = std::clamp(B.determinant() / 2.0, -1.0, 1.0);
  double phi = std::acos(r) / 3.0;
  double e1 = q + 2.0 * p * std::cos(phi);
  double e3 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  std::array<double, 3> e{e3, 3.0 * q - e1 - e3, e1};
  std::sort(e.begin(), e.end());
  return e;
}

}  // namespace

TEST_CASE("one-body matrix from Fock space matches hand counting") {
  CHECK(build_one_body_matrix({0, 0, 0}).norm() == doctest::Approx(0.0));
  Mat3 d = build_one_body_matrix({0, 0.3, -1.1});
  CHECK(d(0, 0) == doctest::Approx(0.6));
  CHECK(d(1, 1) == doctest::Approx(-2.2));
  CHECK(d(2, 2) == doctest::Approx(-0.8));
  CHECK(std::abs(d(0, 1)) + std::abs(d(0, 2)) + std::abs(d(1, 2)) < 1e-15);

  Mat3 h = build_one_body_matrix({0.7, 0.2, -0.4});
  Mat3 expect;
  expect << 0.4, 0, -kS2 * 0.7, 0, -0.8, -kS2 * 0.7, -kS2 * 0.7, -kS2 * 0.7, -0.2;
  CHECK((h - expect).norm() < 1e-14);
}

TEST_CASE("interaction matrix") {
  Mat3 w = build_interaction_matrix({1, 2, 3});
  Mat3 expect;
  expect << 1, 2, 3, 2, 1, 3, 3, 3, 0;
  CHECK((w - expect).norm() == 0.0);
  CHECK(build_interaction_matrix({0, 0, 0}).norm() == 0.0);

  // <W> = U (1 - |c|^2) on-site.
  Mat3 u = build_interaction_matrix({1.7, 0, 0});
  SingletState s = SingletState::normalized(0.3, -0.5, 0.8);
  CHECK(expectation(u, s) == doctest::Approx(1.7 * (1.0 - std::norm(s.c()))));
  CHECK_THROWS(validate(InteractionParams{NAN, 0, 0}));
}

TEST_CASE("state validation") {
  CHECK_THROWS_AS(SingletState(1.0, 1.0, 0.0), std::invalid_argument);
  CHECK_NOTHROW(SingletState(0.6, 0.0, 0.8));
  CHECK(SingletState(0.6, 0.0, 0.8).is_real());
  CHECK_FALSE(SingletState(cplx(0, 0.6), 0.0, 0.8).is_real());
}

TEST_CASE("rdm of basis states and examples") {
  Rdm r1 = rdm_from_state({1, 0, 0});
  CHECK(r1.g11 == doctest::Approx(1.0));
  CHECK(std::abs(r1.g12) < 1e-15);
  Rdm r3 = rdm_from_state({0, 0, 1});
  CHECK(r3.g11 == doctest::Approx(0.5));
  CHECK(std::abs(r3.g12) < 1e-15);
  Rdm rb = rdm_from_state({0.5, 0.5, 1.0 / kS2});
  CHECK(rb.g11 == doctest::Approx(0.5));
  CHECK(rb.g12.real() == doctest::Approx(0.5));
}

TEST_CASE("rdm matches the second-quantized oracle on random complex states") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> g;
  for (int k = 0; k < 200; ++k) {
    SingletState s = SingletState::normalized({g(rng), g(rng)}, {g(rng), g(rng)}, {g(rng), g(rng)});
    Rdm r = rdm_from_state(s);
    Rdm o = rdm_oracle(s.a(), s.b(), s.c());
    CHECK(std::abs(r.g11 - o.g11) < 1e-14);
    CHECK(std::abs(r.g12 - o.g12) < 1e-14);
    CHECK(in_disk(r));
    // Global phase leaves the RDM unchanged.
    cplx ph = std::polar(1.0, 0.37 * k);
    Rdm rp = rdm_from_state(SingletState(ph * s.vector()));
    CHECK(std::abs(rp.g12 - r.g12) < 1e-14);
  }
}

TEST_CASE("rdm of density operators is linear") {
  auto p1 = DensityOperator::projector({1, 0, 0});
  auto p2 = DensityOperator::projector({0, 1, 0});
  auto p3 = DensityOperator::projector({0, 0, 1});
  CHECK(rdm_from_density(p3).g11 == doctest::Approx(0.5));
  Rdm half = rdm_from_density(DensityOperator(0.5 * (p1.matrix() + p2.matrix())));
  CHECK(half.g11 == doctest::Approx(0.5));
  CHECK(std::abs(half.g12) < 1e-15);
  Rdm mix = rdm_from_density(DensityOperator(0.5 * (p1.matrix() + p3.matrix())));
  CHECK(mix.g11 == doctest::Approx(0.75));
  CHECK(DensityOperator(0.5 * (p1.matrix() + p3.matrix())).rank() == 2);
  CHECK_THROWS(DensityOperator(p1.matrix() * 2.0));
  CMat3 bad = p1.matrix();
  bad(0, 1) = 0.3;
  CHECK_THROWS(DensityOperator{bad});
}

TEST_CASE("disk and polar coordinates") {
  CHECK(in_disk(RealRdm{0.5, 0.5}));
  CHECK_FALSE(in_disk(RealRdm{0.5, 0.51}));
  CHECK_THROWS_AS(require_in_disk(RealRdm{1.1, 0.0}), std::domain_error);
  RealRdm c = cartesian_from_polar({0.5, 1.234});
  CHECK(c.g11 == doctest::Approx(0.5));
  CHECK(std::abs(c.g12) < 1e-15);
  RealRdm e = cartesian_from_polar({0.0, 0.0});
  CHECK(e.g11 == doctest::Approx(1.0));
  RealRdm n = cartesian_from_polar({0.0, std::numbers::pi / 2});
  CHECK(n.g11 == doctest::Approx(0.5));
  CHECK(n.g12 == doctest::Approx(0.5));
  for (double phi : {0.1, 1.7, 3.0, 4.4, 6.0}) {
    PolarRdm p = polar_from_cartesian(cartesian_from_polar({0.2, phi}));
    CHECK(p.R == doctest::Approx(0.2));
    CHECK(p.phi == doctest::Approx(phi));
  }
}

TEST_CASE("ground state agrees with the cubic eigenvalue oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int k = 0; k < 200; ++k) {
    OneBodyParams p{u(rng), u(rng), u(rng)};
    InteractionParams w{u(rng), u(rng), u(rng)};
    auto e = cubic_eigenvalues(build_hamiltonian(p, w));
    GroundState gs = ground_state(p, w);
    CHECK(std::abs(gs.energy - e[0]) < 1e-10);
    Mat3 H = build_hamiltonian(p, w);
    for (const auto& s : gs.states) CHECK(std::abs(expectation(H, s) - gs.energy) < 1e-10);
  }
}

TEST_CASE("ground state degeneracy") {
  GroundState a = ground_state({0, 0, 0}, {1, 0, 0});
  CHECK(a.energy == doctest::Approx(0.0));
  CHECK(a.degeneracy == 1);
  CHECK(std::norm(a.states[0].c()) == doctest::Approx(1.0));
  GroundState b = ground_state({0, 0, 0}, {-1, 0, 0});
  CHECK(b.energy == doctest::Approx(-1.0));
  CHECK(b.degeneracy == 2);
  CHECK(b.states.size() == 2);
}

TEST_CASE("one-body energy is the trace with the Hamiltonian") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int k = 0; k < 50; ++k) {
    OneBodyParams p{g(rng), g(rng), g(rng)};
    SingletState s = SingletState::normalized(g(rng), g(rng), g(rng));
    double direct = expectation(build_one_body_matrix(p), s);
    CHECK(one_body_energy(p, real_part(rdm_from_state(s))) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("json round trip keeps basis and values") {
  Mat3 m = build_hamiltonian({0.3, 0.1, -0.2}, {1, 0.5, 0.25});
  CHECK((real_matrix_from_json(to_json(m)) - m).norm() == 0.0);
  CMat3 c = DensityOperator::projector(SingletState::normalized({0.1, 0.2}, 0.5, {0, -0.3})).matrix();
  CHECK((complex_matrix_from_json(to_json(c)) - c).norm() == 0.0);
  Rdm r{0.3, cplx(0.1, -0.2)};
  auto j = to_json(r);
  CHECK(j["basis"] == "site1,site2");
  CHECK(j["trace_convention"] == "per_spin_block_trace1");
  Rdm back = rdm_from_json(j);
  CHECK(back.g11 == r.g11);
  CHECK(back.g12 == r.g12);
  auto wrong = to_json(m);
  wrong["basis"] = "site1,site2";
  CHECK_THROWS(real_matrix_from_json(wrong));
}
