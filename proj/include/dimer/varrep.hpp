#pragma once

#include <string>
#include <vector>

#include "dimer/analytic.hpp"
#include "dimer/grid.hpp"
#include "dimer/model.hpp"
#include "dimer/search.hpp"

namespace dimer::varrep {

enum class Status : int {
  representable = 0,
  not_representable = 1,
  boundary_excluded = 2,
  boundary_touchpoint = 3
};

std::string to_string(Status s);

struct VrepVerdict {
  Status status = Status::representable;
  double gap = 0.0;  // F_pure - F_ensemble
};

constexpr double kBoundaryBand = 1e-3;
constexpr double kVerdictTolerance = 1e-6;
constexpr double kPrefactorTolerance = 1e-10;

VrepVerdict classify_point(FunctionalKind kind_pure, FunctionalKind kind_ens,
                           const InteractionParams& w, const RealRdm& r,
                           double tol = kVerdictTolerance,
                           const search::SearchOptions& opts = {});

struct VrepMap {
  GridField status;  // integer-coded Status per node
  GridField gap;
  GridField pure;
  GridField ensemble;
  int region_count = 0;
};

// Ensemble values come from the discrete lower convex envelope of the pure
// samples when kind_ens is the partner of kind_pure, otherwise per node.
VrepMap vrep_map(FunctionalKind kind_pure, FunctionalKind kind_ens, const InteractionParams& w,
                 int resolution, double tol = kVerdictTolerance,
                 const search::SearchOptions& opts = {});

// Connected components (4-neighborhood) of not_representable nodes.
int count_regions(const GridField& status);

// h = (t, eps1 - eps2) sampled in polar form: magnitudes log-spaced in
// [magnitude_min, magnitude_max] times max(1, |U|, |V|, |X|), angles uniform.
struct SweepRange {
  double magnitude_min = 0.1;
  double magnitude_max = 100.0;
};

struct SweepSample {
  OneBodyParams h;
  RealRdm gamma;
  double energy = 0.0;
  int degeneracy = 1;
};

std::vector<SweepSample> ground_state_sweep(const InteractionParams& w, const SweepRange& range,
                                            int samples);

enum class FamilyBranch { left, right };

struct FamilyMember {
  SingletState state{1.0, 0.0, 0.0};
  Rdm rdm;
};

// left:  x Phi2 + sign sqrt(1 - |x|^2) Phi3
// right: x Phi1 + sign sqrt(1 - |x|^2) Phi3
FamilyMember degenerate_family(cplx x, int sign, FamilyBranch branch);

// One-body parameters with t = 0 where the two family endpoints are degenerate
// ground states, located by minimizing the spectral gap along eps1 - eps2.
OneBodyParams find_degenerate_h(const InteractionParams& w, FamilyBranch branch);

struct ForceFit {
  double prefactor = 0.0;
  double exponent = 0.0;
  double residual = 0.0;
  double phi = 0.0;
  double analytic_prefactor = 0.0;
  bool bounded = false;  // no divergence detected
  bool flagged = false;  // fit residual above threshold
};

constexpr double kForceFitResidualThreshold = 1e-3;

ForceFit force_fit(const InteractionParams& w, double phi, double r_min, double r_max, int points);

}  // namespace dimer::varrep
