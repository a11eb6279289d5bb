#ifndef OVERCONV_PADIC_HPP
#define OVERCONV_PADIC_HPP

// Exact Z/p^N and Q_p arithmetic with per-element absolute precision
// tracking, plus Teichmuller lifts, p-adic logarithm and Hensel root
// finding. p is an odd prime.

#include "overconv/numbers.hpp"

#include <limits>
#include <optional>

namespace ovc {

// Elements are unit * p^val + O(p^{val+relprec}); a "zero at precision A"
// is stored as unit = 0, relprec = 0, val = A. Arithmetic never increases
// precision: every operation takes the min of the input precisions,
// adjusted by valuations.
class PadicNum {
 public:
  static constexpr long PREC_EXACT = std::numeric_limits<long>::max() / 4;

  PadicNum() = default;

  // value n known to absolute precision abs_prec
  PadicNum(long p, const Int& n, long abs_prec);
  PadicNum(long p, const Rat& q, long abs_prec);

  static PadicNum zero(long p, long abs_prec) {
    PadicNum z;
    z.p_ = p;
    z.val_ = abs_prec;
    return z;
  }
  static PadicNum exact_int(long p, const Int& n) { return PadicNum(p, n, PREC_EXACT); }

  long prime() const { return p_; }
  bool is_zero() const { return unit_ == 0; }  // zero at its stated precision
  long valuation() const { return val_; }      // = abs precision when zero
  long rel_prec() const { return relprec_; }
  long abs_prec() const { return unit_ == 0 ? val_ : val_ + relprec_; }
  const Int& unit_part() const { return unit_; }

  PadicNum truncate_abs(long abs_prec) const;

  PadicNum operator-() const;
  PadicNum operator+(const PadicNum& o) const;
  PadicNum operator-(const PadicNum& o) const { return *this + (-o); }
  PadicNum operator*(const PadicNum& o) const;
  PadicNum operator/(const PadicNum& o) const { return *this * o.inverse(); }
  PadicNum inverse() const;
  PadicNum pow(long e) const;

  PadicNum& operator+=(const PadicNum& o) { return *this = *this + o; }
  PadicNum& operator-=(const PadicNum& o) { return *this = *this - o; }
  PadicNum& operator*=(const PadicNum& o) { return *this = *this * o; }

  // equality as far as the joint precision can see
  bool operator==(const PadicNum& o) const { return (*this - o).is_zero(); }

  // representative in [0, p^{abs_prec - val}) * p^val; requires val >= 0,
  // returns the integer residue mod p^{abs_prec}
  Int residue(long abs_prec) const;

  std::string str() const;            // human readable
  std::string serial() const;         // "val:unit:relprec" machine form

 private:
  void canonicalize(long avail_digits);

  long p_ = 0;
  long val_ = 0;
  Int unit_ = 0;
  long relprec_ = 0;
};

PadicNum teichmuller(const Int& a, long p, long N);

// log of x with x = 1 mod p, via the alternating series; the tail is cut
// when v(t^n/n) >= target using v(t^n/n) >= n*v(t) - floor(log_p n).
PadicNum padic_log(const PadicNum& x);

// exp of x with v(x) >= 1 (p odd); inverse of padic_log on 1 + pZp
PadicNum padic_exp(const PadicNum& x);

class PadicPoly {
 public:
  PadicPoly() = default;
  explicit PadicPoly(std::vector<PadicNum> coeffs) : c_(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const PadicNum& coeff(int i) const { return c_[i]; }
  const std::vector<PadicNum>& coeffs() const { return c_; }

  PadicNum eval(const PadicNum& x) const;
  PadicPoly derivative() const;

 private:
  void trim();
  std::vector<PadicNum> c_;
};

// All roots in Q_p to precision N. Simple residue roots are lifted by
// Newton iteration; quadratics with a unit root and a positive-valuation
// root (Newton polygon with two slopes) are handled via the product of
// roots. Anything else raises std::domain_error naming the obstruction.
std::vector<PadicNum> hensel_roots(const PadicPoly& f, long p, long N);

}  // namespace ovc

#endif
