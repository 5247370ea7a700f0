#include <stdexcept>

#include "dimer/search.hpp"

namespace dimer::search {

namespace {

RealRdm require_real(FunctionalKind kind, const Rdm& r) {
  if (r.g12.imag() != 0.0)
    throw std::invalid_argument(to_string(kind) + " is defined on real 1RDMs only");
  return real_part(r);
}

}  // namespace

bool has_closed_form(FunctionalKind kind, const InteractionParams& w) {
  switch (kind) {
    case FunctionalKind::FR_pure: return true;
    case FunctionalKind::FC_pure:
    case FunctionalKind::FCtilde_pure: return w.onsite();
    default: return false;
  }
}

double evaluate(FunctionalKind kind, const InteractionParams& w, const Rdm& r,
                const SearchOptions& opts) {
  validate(w);
  require_in_disk(r);
  switch (kind) {
    case FunctionalKind::FR_pure:
      return analytic::f_r_pure_general(w, require_real(kind, r));
    case FunctionalKind::FR_ens:
      require_real(kind, r);
      return min_ensemble(w, r, opts, EnsembleField::real).value;
    case FunctionalKind::FC_pure: {
      RealRdm rr = require_real(kind, r);
      return w.onsite() ? analytic::f_c_pure_onsite(w.U, rr)
                        : min_pure_complex_reduced(w, rr, opts);
    }
    case FunctionalKind::FC_ens:
      require_real(kind, r);
      return min_ensemble(w, r, opts, EnsembleField::complex_free_imaginary).value;
    case FunctionalKind::FCtilde_pure:
      return w.onsite() ? analytic::f_ctilde_pure_onsite(w.U, r) : min_pure_complex(w, r, opts);
    case FunctionalKind::FCtilde_ens:
      return min_ensemble(w, r, opts, EnsembleField::complex).value;
  }
  throw std::logic_error("unknown functional kind");
}

double evaluate(FunctionalKind kind, const InteractionParams& w, const RealRdm& r,
                const SearchOptions& opts) {
  return evaluate(kind, w, to_complex(r), opts);
}

}  // namespace dimer::search
