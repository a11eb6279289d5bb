#ifndef OVERCONV_CYCLO_HPP
#define OVERCONV_CYCLO_HPP

// Arithmetic in Q_p(zeta_{p^m}), represented as polynomials in the power
// basis 1, X, ..., X^{d-1} modulo the p^m-th cyclotomic polynomial
// Phi_{p^m}(X) = sum_{i<p} X^{i p^{m-1}}, with PadicNum coefficients.
// X is the chosen primitive p^m-th root of unity; this choice is the
// normalisation of all Gauss sums computed here.

#include "overconv/padic.hpp"

#include <memory>

namespace ovc {

class CycloField;

class CycloElt {
 public:
  CycloElt() = default;
  CycloElt(const CycloField* F, std::vector<PadicNum> coeffs);

  const CycloField* field() const { return F_; }
  const std::vector<PadicNum>& coeffs() const { return c_; }

  CycloElt operator+(const CycloElt& o) const;
  CycloElt operator-(const CycloElt& o) const;
  CycloElt operator-() const;
  CycloElt operator*(const CycloElt& o) const;
  CycloElt scaled(const PadicNum& s) const;

  // image under X -> X^u, u coprime to p
  CycloElt galois(long u) const;
  CycloElt conj() const;

  // lower bound for the Q_p-valuation (power basis is an integral basis)
  long valuation_lower_bound() const;

  // the degree-0 coefficient, if all others vanish at their precision
  PadicNum as_padic() const;

  std::string str() const;

 private:
  const CycloField* F_ = nullptr;
  std::vector<PadicNum> c_;
};

class CycloField {
 public:
  CycloField(long p, int m, long prec);

  long p() const { return p_; }
  int m() const { return m_; }
  long degree() const { return deg_; }
  long prec() const { return prec_; }

  CycloElt zero() const;
  CycloElt one() const;
  CycloElt from_padic(const PadicNum& x) const;
  CycloElt from_rat(const Rat& q) const;
  // X^e for 0 <= e < p^m, reduced to the power basis
  CycloElt root_power(long e) const;

  PadicNum zero_scalar() const { return PadicNum::zero(p_, PadicNum::PREC_EXACT); }

 private:
  friend class CycloElt;
  long p_;
  int m_;
  long deg_;    // (p-1) p^{m-1}
  long pm_;     // p^m
  long prec_;   // default working precision for scalars
};

}  // namespace ovc

#endif
