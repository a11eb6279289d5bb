#ifndef OVERCONV_ARTIN_HPP
#define OVERCONV_ARTIN_HPP

// Value-level Artin formalism for quadratic twists: the product
// L_p(f) * L_p(f tensor chi_D) matches the product of the classical sides
// at every critical character, which is the rational-field content of the
// factorisation of the base-change p-adic L-function over Q(sqrt(D)).

#include "overconv/lfun.hpp"

namespace ovc {

// product functional on characters; Mellin series multiply per branch
struct ProductDistribution {
  BranchedDistribution first, second;
  Rat slope;  // h1 + h2

  PadicNum evaluate(const PadicCharacter& chi) const;
  CycloElt evaluate_cyclo(const PadicCharacter& chi, const CycloField& F) const;
  MellinSeries mellin_product(long omega_power, long T_prec) const;
};

ProductDistribution lp_product(const BranchedDistribution& L1, const BranchedDistribution& L2);

struct ArtinValueEntry {
  long conductor_m = 0;
  long tame_exp = 0;
  long wild_exp = 0;
  long j = 0;
  std::string lhs, rhs;
  long defect_valuation = 0;
  bool pass = false;
};

struct ArtinValueReport {
  std::string label;
  long D = 0;
  long p = 0;
  long achieved = 0;
  bool refused = false;
  std::string refusal;
  std::vector<ArtinValueEntry> entries;
  bool all_pass() const {
    for (const auto& e : entries)
      if (!e.pass) return false;
    return true;
  }
};

// computes evaluate(L_p(f_alpha), chi) * evaluate(L_p((f x chi_D)_alpha'), chi)
// against the product of interpolation factors times both classical
// evaluations; defects are reported against the joint achieved precision
// minus the stated slack
ArtinValueReport artin_value_check(const EigenData& f, long D, long p,
                                   const std::vector<PadicCharacter>& characters, long N,
                                   long slack = 2);

struct GaussCompatReport {
  long p = 0;
  int m = 0;
  long D = 0;
  bool baseline_pass = false;   // tau(chi) tau(chibar) = chi(-1) p^m
  bool relation_pass = false;   // tau(chi chi_D) = chi(|D|) chi_D(p^m) tau(chi) tau(chi_D)
  std::string lhs, rhs;
};

// Verifies, in the cyclotomic arithmetic over Q_p, the twisted Gauss-sum
// relation discovered by brute force: with zeta_{p^m |D|} split as
// zeta_{p^m}^{u} zeta_{|D|}^{v} by CRT,
//   tau(chi chi_D) = chi(|D|) chi_D(p^m) tau(chi) tau(chi_D).
// Requires |D| dividing p-1 so that zeta_{|D|} lies in Z_p.
GaussCompatReport gauss_compat_check(const FiniteCharacter& chi, long D, long prec);

}  // namespace ovc

#endif
