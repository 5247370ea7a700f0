#pragma once

#include <cstdint>
#include <vector>

#include "dimer/analytic.hpp"
#include "dimer/grid.hpp"
#include "dimer/model.hpp"

namespace dimer::search {

struct SearchOptions {
  int restarts = 64;
  int max_iterations = 500;
  double tolerance = 1e-10;
  std::uint64_t seed = 12345;
};

void validate(const SearchOptions& opts);

struct PureResult {
  double value = 0.0;
  SingletState argmin{1.0, 0.0, 0.0};
};

// Real states (a, b, c) reproducing the target; every branch of the
// constraint equations, sign choices included. Empty only outside the disk.
std::vector<SingletState> real_states_for(const RealRdm& target);

PureResult min_pure_real(const InteractionParams& w, const RealRdm& target,
                         const SearchOptions& opts = {});

PureResult min_pure_complex_state(const InteractionParams& w, const Rdm& target,
                                  const SearchOptions& opts = {});
double min_pure_complex(const InteractionParams& w, const Rdm& target,
                        const SearchOptions& opts = {});

// Minimum of min_pure_complex over Im(g12) at fixed (g11, Re g12).
double min_pure_complex_reduced(const InteractionParams& w, const RealRdm& target,
                                const SearchOptions& opts = {});

enum class EnsembleField {
  real,                  // real symmetric density operators
  complex,               // Hermitian, full complex g12 fixed
  complex_free_imaginary  // Hermitian, only Re(g12) fixed
};

struct EnsembleResult {
  double value = 0.0;
  DensityOperator argmin = DensityOperator(CMat3::Identity() / 3.0);
  int newton_steps = 0;
};

EnsembleResult min_ensemble(const InteractionParams& w, const Rdm& target,
                            const SearchOptions& opts = {},
                            EnsembleField field = EnsembleField::real);

GridField lower_convex_envelope(const GridField& f);

// Routes to a closed form where one exists, otherwise to the oracles above.
bool has_closed_form(FunctionalKind kind, const InteractionParams& w);
double evaluate(FunctionalKind kind, const InteractionParams& w, const Rdm& r,
                const SearchOptions& opts = {});
double evaluate(FunctionalKind kind, const InteractionParams& w, const RealRdm& r,
                const SearchOptions& opts = {});

struct EnergyResult {
  double energy = 0.0;
  std::vector<RealRdm> minimizers;
};

constexpr double kMinimizerValueTolerance = 1e-8;

EnergyResult legendre_fenchel_energy(const OneBodyParams& p, FunctionalKind kind,
                                     const InteractionParams& w, int resolution,
                                     const SearchOptions& opts = {});

}  // namespace dimer::search
