#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "dimer/model.hpp"

namespace dimer {

enum class FunctionalKind { FR_pure, FR_ens, FC_pure, FC_ens, FCtilde_pure, FCtilde_ens };

inline constexpr FunctionalKind kAllKinds[] = {
    FunctionalKind::FR_pure,  FunctionalKind::FR_ens,       FunctionalKind::FC_pure,
    FunctionalKind::FC_ens,   FunctionalKind::FCtilde_pure, FunctionalKind::FCtilde_ens};

// CLI spelling: fr-pure, fr-ens, fc-pure, fc-ens, fct-pure, fct-ens.
std::string to_string(FunctionalKind k);
FunctionalKind parse_kind(const std::string& s);
bool is_pure(FunctionalKind k);
FunctionalKind ensemble_partner(FunctionalKind k);

}  // namespace dimer

namespace dimer::analytic {

class UnsupportedAnalytic : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Value at the disk center (1/2, 0): infimum over approach directions.
double center_value(const InteractionParams& w);

double f_r_pure_onsite(double U, const RealRdm& r);
double f_ctilde_pure_onsite(double U, const Rdm& r);
double f_c_pure_onsite(double U, const RealRdm& r);

// Polar form. At R = 1/2 the formula is evaluated at the supplied phi.
double f_r_pure_general(const InteractionParams& w, const PolarRdm& p);
// Cartesian form. At the center returns center_value(w).
double f_r_pure_general(const InteractionParams& w, const RealRdm& r);

struct C2Candidates {
  double plus = 0.0;
  double minus = 0.0;
};

C2Candidates c2_candidates(const RealRdm& r);

enum class Axis { g11, g12 };
enum class Branch { left, right, upper, lower };
enum class Membership { inside, on, outside };

std::string to_string(Branch b);
std::string to_string(Membership m);

struct EllipseSpec {
  double center_g11 = 0.5;
  double center_g12 = 0.0;
  double semi_g11 = 0.0;
  double semi_g12 = 0.0;
  Axis orientation = Axis::g11;  // direction of the major semi-axis
  Branch branch = Branch::left;

  // ((g11-c11)/a)^2 + ((g12-c12)/b)^2 - 1
  double quadratic_form(const RealRdm& r) const;
  RealRdm point(double theta) const;
};

constexpr double kMembershipTolerance = 1e-10;

std::vector<EllipseSpec> ellipse_onsite(double U);
std::vector<EllipseSpec> ellipses_general(const InteractionParams& w);
Membership membership(const std::vector<EllipseSpec>& ellipses, const RealRdm& r,
                      double tol = kMembershipTolerance);
double distance_to_ellipse(const EllipseSpec& e, const RealRdm& r);
double distance_to_ellipses(const std::vector<EllipseSpec>& es, const RealRdm& r);

double force_prefactor(const InteractionParams& w, double phi);

struct VanishingAngles {
  std::vector<double> angles;
  bool all_angles = false;
};

constexpr double kAngleDedupTolerance = 1e-10;

VanishingAngles vanishing_angles(const InteractionParams& w);

constexpr double kHessianStep = 1e-5;
constexpr double kHessianBoundaryBand = 1e-3;
constexpr double kHessianKinkTube = 1e-4;

double hessian_det_f_r(const InteractionParams& w, const RealRdm& r);

}  // namespace dimer::analytic
