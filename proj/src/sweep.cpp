#include <algorithm>
#include <cmath>
#include <numbers>

#include "dimer/varrep.hpp"

namespace dimer::varrep {

std::vector<SweepSample> ground_state_sweep(const InteractionParams& w, const SweepRange& range,
                                            int samples) {
  validate(w);
  if (samples < 1000) throw std::invalid_argument("sweep needs at least 1000 samples");
  if (!(range.magnitude_min > 0.0 && range.magnitude_max > range.magnitude_min))
    throw std::invalid_argument("sweep magnitudes must satisfy 0 < min < max");
  const double scale = std::max({1.0, std::abs(w.U), std::abs(w.V), std::abs(w.X)});
  const int n_angle = std::max(8, int(std::sqrt(samples / 1.5625)));
  const int n_radial = (samples + n_angle - 1) / n_angle;
  const double lmin = std::log(range.magnitude_min * scale);
  const double lmax = std::log(range.magnitude_max * scale);
  std::vector<SweepSample> out;
  out.reserve(std::size_t(n_angle) * n_radial);
  for (int a = 0; a < n_angle; ++a) {
    double theta = 2.0 * std::numbers::pi * a / n_angle;
    for (int k = 0; k < n_radial; ++k) {
      double mag = std::exp(lmin + (lmax - lmin) * k / std::max(1, n_radial - 1));
      double delta = mag * std::sin(theta);
      OneBodyParams h{mag * std::cos(theta), 0.5 * delta, -0.5 * delta};
      GroundState gs = ground_state(h, w);
      for (const auto& s : gs.states)
        out.push_back({h, real_part(rdm_from_state(s)), gs.energy, gs.degeneracy});
    }
  }
  return out;
}

}  // namespace dimer::varrep
