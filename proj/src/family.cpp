#include <cmath>

#include "dimer/minimize.hpp"
#include "dimer/varrep.hpp"

namespace dimer::varrep {

FamilyMember degenerate_family(cplx x, int sign, FamilyBranch branch) {
  double m2 = std::norm(x);
  if (!std::isfinite(m2) || m2 > 1.0 + 1e-12) throw std::domain_error("|x| must not exceed 1");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  double c = sign * std::sqrt(std::max(0.0, 1.0 - m2));
  CVec3 v = branch == FamilyBranch::left ? CVec3(0.0, x, c) : CVec3(x, 0.0, c);
  SingletState s(v / v.norm());
  return {s, rdm_from_state(s)};
}

OneBodyParams find_degenerate_h(const InteractionParams& w, FamilyBranch branch) {
  validate(w);
  const SingletState end_a = branch == FamilyBranch::left ? SingletState(0.0, 1.0, 0.0)
                                                          : SingletState(1.0, 0.0, 0.0);
  const SingletState end_b(0.0, 0.0, 1.0);
  auto h_of = [](double delta) { return OneBodyParams{0.0, 0.5 * delta, -0.5 * delta}; };
  // Gap between the two family endpoints plus their distance above the ground energy.
  auto score = [&](double delta) {
    OneBodyParams h = h_of(delta);
    Mat3 H = build_hamiltonian(h, w);
    double e0 = ground_state(h, w).energy;
    double ea = expectation(H, end_a), eb = expectation(H, end_b);
    return std::abs(ea - eb) + (std::max(ea, eb) - e0);
  };
  const double scale = std::max({1.0, std::abs(w.U), std::abs(w.V), std::abs(w.X)});
  auto m = numeric::scan_minimize(score, -20.0 * scale, 20.0 * scale, 4000, 1e-15, 500);
  if (m.value > 1e-8 * scale)
    throw std::runtime_error("no degenerate one-body parameters found for this branch");
  return h_of(m.x);
}

}  // namespace dimer::varrep
