#ifndef OVERCONV_CHARACTERS_HPP
#define OVERCONV_CHARACTERS_HPP

// Finite characters of (Z/p^m)^* and their Gauss sums. A character is
// stored by its exponents against a fixed generator: chi(g^s) =
// omega(g)^{e1 s} * zeta_{p^{m-1}}^{e2 s}. Values of the tame part live
// in Z_p; wild parts need the ramified cyclotomic extension.

#include "overconv/cyclo.hpp"

#include <map>

namespace ovc {

class FiniteCharacter {
 public:
  // trivial character (modulus 1)
  FiniteCharacter() = default;
  FiniteCharacter(long p, int m, long e1, long e2);

  long p() const { return p_; }
  int m() const { return m_; }              // conductor exponent of the stated modulus
  long modulus() const { return pm_; }
  long tame_exp() const { return e1_; }
  long wild_exp() const { return e2_; }

  bool is_trivial() const { return m_ == 0; }
  bool is_primitive() const;
  bool is_odd() const { return m_ > 0 && (e1_ % 2) != 0; }
  bool is_tame() const { return m_ <= 1 || e2_ == 0; }
  long order() const;

  FiniteCharacter bar() const;  // complex conjugate (inverse)

  // chi(x); zero for gcd(x, p) > 1. Tame characters only.
  PadicNum value_padic(const Int& x, long prec) const;
  // chi(x) in a field containing zeta_{p^{m-1}} (requires F->m() >= m-1; for
  // tame chi any field over the same p works)
  CycloElt value(const Int& x, const CycloField& F, long prec) const;

  // all primitive characters mod p^m
  static std::vector<FiniteCharacter> primitive_characters(long p, int m);

 private:
  long dlog(const Int& x) const;

  long p_ = 0;
  int m_ = 0;
  long pm_ = 1;
  long e1_ = 0, e2_ = 0;
  long g_ = 0;                      // generator of (Z/p^m)^*
  std::vector<long> dlog_table_;    // index x mod p^m -> s with g^s = x
};

// Gauss sum of a primitive chi mod p^m, as an element of Q_p(zeta_{p^m});
// the additive character sends 1 to the field generator X.
CycloElt gauss_sum(const FiniteCharacter& chi, const CycloField& F, long prec);

}  // namespace ovc

#endif
