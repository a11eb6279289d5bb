#ifndef OVERCONV_LFUN_HPP
#define OVERCONV_LFUN_HPP

// The p-adic L-function as a distribution on Z_p^* presented by branch
// moments: for each residue a mod p^c prime to p, the list
// m_{a,j} = integral over a + p^c Z_p of (y-a)^j, j < nmom. Branch data
// comes from evaluating an overconvergent symbol on the cusp paths
// {a/p^c -> infinity}; the j-th branch moment is p^{cj} times the j-th
// raw moment of that value.

#include "overconv/characters.hpp"
#include "overconv/lift.hpp"

namespace ovc {

struct BranchedDistribution {
  long p = 0;
  long depth = 1;  // conductor exponent c
  long nmom = 0;
  Rat slope = 0;          // admissibility order tag
  long alpha_power = 0;   // the U_p normalisation alpha^{-alpha_power} applied
  std::map<long, std::vector<PadicNum>> branches;  // a -> moments

  long branch_count() const { return static_cast<long>(branches.size()); }
  // guaranteed filtration-style precision: min_j over branches of
  // (valuation bound of m_{a,j}) - depth*j, i.e. the depth-adjusted level
  long moment_precision() const;
};

// the character chi * x^j on Z_p^*: finite part chi (conductor p^m) and
// the j-th power of the identity
struct PadicCharacter {
  FiniteCharacter finite;
  long j = 0;
  bool is_even() const { return ((finite.is_odd() ? 1 : 0) + (j % 2)) % 2 == 0; }
};

// raw Galois evaluation Ev^c: branch moments of Phi at conductor p^c
BranchedDistribution galois_evaluate(const DistModule& D, const ModularSymbol<DistModule>& Phi, long c);

// L_p = alpha^{-c} Ev^c(Phi), tagged with the slope
BranchedDistribution build_lp(const RefinedEigenData& f, const DistModule& D,
                              const ModularSymbol<DistModule>& Phi, long c = 1);

// coarsen depth-(c+1) branch data to depth c
BranchedDistribution coarsen(const BranchedDistribution& L);

struct HorizontalReport {
  long depth_fine = 0;
  long defect_valuation = 0;  // lower bound for v(Ev^{c+1} - Ev^c o U_p)
};

// operator identity Ev^{c+1} = refine o Ev^c o U_p, checked branchwise
HorizontalReport horizontal_check(const DistModule& D, const ModularSymbol<DistModule>& Phi, long c);

// sum over branches of chi(a) * (uncentred j-th moment at a); exact given
// the moments since chi is constant on depth-c branches. Tame characters
// produce Z_p values; wild ones need a cyclotomic field.
PadicNum evaluate_character(const BranchedDistribution& L, const PadicCharacter& chi);
CycloElt evaluate_character_cyclo(const BranchedDistribution& L, const PadicCharacter& chi,
                                  const CycloField& F);

// The explicit scalar with evaluate_character(L_p, chi x^j) =
// factor * ev_classical(phi^eps, chi, j). Shapes, with the one-off unit
// calibrated at (11a1, p=3, trivial chi, j=0):
//   conductor 1:  (1 - p^j/alpha)(1 - p^{k-j}/alpha), single factor
//                 (1 - p^j/alpha) when p divides the level;
//   conductor p^m: alpha^{-m}.
// The Gauss-sum factor of the classical interpolation statement sits
// inside ev_classical, whose pairing at a/c is already twisted by
// [[1,a],[0,c]].
PadicNum interpolation_factor(const RefinedEigenData& f, const PadicCharacter& chi, long prec);

// classical side: sum_a chi(a) * (phi({a/c -> inf}) | [[1,a],[0,c]])(x^j)
PadicNum ev_classical_padic(const RatPolyModule& M, const ModularSymbol<RatPolyModule>& phi,
                            const PadicCharacter& chi, long p, long prec);
CycloElt ev_classical_cyclo(const RatPolyModule& M, const ModularSymbol<RatPolyModule>& phi,
                            const PadicCharacter& chi, const CycloField& F, long prec);

// Mellin presentation: for the branch character omega^i, the power series
// sum c_n T^n with 1+p mapped to 1+T; c_n = integral of
// omega(y)^i binom(log<y>/log(1+p), n).
struct MellinSeries {
  long branch = 0;
  std::vector<PadicNum> coeffs;
};
MellinSeries mellin(const BranchedDistribution& L, long omega_power, long T_prec);

struct AdmissibilityReport {
  bool pass = true;
  long order_ceiling = 0;  // ceil(h * c)
  std::vector<std::tuple<long, long, long, long>> violations;  // (a, j, bound, actual)
};
AdmissibilityReport admissibility_check(const BranchedDistribution& L, const Rat& h);

}  // namespace ovc

#endif
