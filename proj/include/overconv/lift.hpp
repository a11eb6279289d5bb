#ifndef OVERCONV_LIFT_HPP
#define OVERCONV_LIFT_HPP

// Lifting classical eigensymbols to overconvergent (distribution-valued)
// symbols by iterating U_p/alpha from a naive preimage, in the small-slope
// range v_p(alpha) < k+1. Moments beyond the classical block start as
// no-information intervals O(p^0), so the per-moment precision of the
// result is established by the interval arithmetic itself.

#include "overconv/eigendata.hpp"
#include "overconv/modsym.hpp"

#include <random>

namespace ovc {

// p-stabilisation of a level-N rational eigensymbol to level N*p:
// phi_alpha(D) = phi(D) - alpha^{-1} phi(W_p D)|W_p, W_p = [[p,0],[0,1]].
// When p divides the level already, the symbol is just converted.
ModularSymbol<PadicPolyModule> stabilise_symbol(const PadicPolyModule& M, const ManinBasis& BNp,
                                                const ManinBasis& BN,
                                                const ModularSymbol<RatPolyModule>& phi,
                                                const RefinedEigenData& f);

// preimage of phi under specialisation; junk moments are O(p^0) intervals,
// or random integers declared exact when rng is supplied (used to exhibit
// lift independence)
ModularSymbol<DistModule> naive_lift(const DistModule& D, const ModularSymbol<PadicPolyModule>& phi,
                                     std::mt19937_64* rng = nullptr);

struct ControlLiftResult {
  ModularSymbol<DistModule> symbol;
  long requested_N = 0;
  long achieved_N = 0;        // honest filtration level of the output
  long iterations = 0;
  long eigen_defect = 0;      // fil level of U_p Phi - alpha Phi at return
  long relation_defect = 0;   // fil level of the Manin relation defects
  bool converged = false;
  Rat slope = 0;
  std::string refusal;        // nonempty if the lift was refused
};

// the control-theorem arrow: unique small-slope eigenlift of phi mod Fil^N
ControlLiftResult control_lift(const DistModule& D, const ManinBasis& BNp,
                               const ModularSymbol<PadicPolyModule>& phi_alpha,
                               const RefinedEigenData& f, long N, std::mt19937_64* rng = nullptr);

// slope bound + convergence report (Definition of non-critical refinements)
struct NonCriticalityReport {
  Rat slope;
  long bound;  // k+1
  bool refused = false;
  bool converged = false;
  long achieved = 0;
  long eigen_defect = 0;
};

NonCriticalityReport noncriticality_report(const ControlLiftResult& r, long k);

// convenience pipeline: eigen_solve + stabilise + control_lift
struct LiftPipeline {
  std::unique_ptr<ManinBasis> BN;
  std::unique_ptr<ManinBasis> BNp;  // null when p divides the level
  std::unique_ptr<DistModule> D;
  ModularSymbol<RatPolyModule> classical;
  ModularSymbol<PadicPolyModule> stabilised;
  ControlLiftResult lift;
  RefinedEigenData refined;
  int sign = +1;

  const ManinBasis& basis_np() const { return BNp ? *BNp : *BN; }
};

LiftPipeline run_lift_pipeline(const EigenData& f, long p, long N, int sign,
                               std::mt19937_64* rng = nullptr, long nmom_min = 0);

}  // namespace ovc

#endif
