#ifndef OVERCONV_COEFFS_HPP
#define OVERCONV_COEFFS_HPP

// Coefficient modules for modular symbols: duals of weight-k polynomials
// (rational or p-adic scalars) and finite-approximation distribution
// modules. Values are acted on the right by integral 2x2 matrices through
// cached moment-transform tables.
//
// Conventions: a matrix g = [[a,b],[c,d]] acts on test functions by
// (g.f)(x) = (a+cx)^k f((b+dx)/(a+cx)), and on duals by (mu|g)(f) = mu(g.f).
// For distributions the matrix must satisfy p | c, p coprime to a, so that
// the series expansion converges on Z_p. The j-th row of the transform is
// the coefficient list of (b+dx)^j (a+cx)^{k-j}.

#include "overconv/padic.hpp"

#include <map>
#include <mutex>

namespace ovc {

struct Mat22 {
  long a = 1, b = 0, c = 0, d = 1;
  long det() const { return a * d - b * c; }
  bool operator<(const Mat22& o) const {
    return std::tie(a, b, c, d) < std::tie(o.a, o.b, o.c, o.d);
  }
  bool operator==(const Mat22& o) const { return a == o.a && b == o.b && c == o.c && d == o.d; }
};

inline Mat22 operator*(const Mat22& x, const Mat22& y) {
  return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}

// inverse of a determinant +-1 matrix
inline Mat22 sl2_inv(const Mat22& m) {
  long det = m.det();
  if (det == 1) return {m.d, -m.b, -m.c, m.a};
  if (det == -1) return {-m.d, m.b, m.c, -m.a};
  throw std::domain_error("sl2_inv: determinant not a unit");
}

// ---------------------------------------------------------------------
// dual of weight-k polynomials over Q

class RatPolyModule {
 public:
  using Scalar = Rat;
  using Value = std::vector<Rat>;  // c_j = mu(x^j), length k+1

  explicit RatPolyModule(long k) : k_(k) {}
  long weight() const { return k_; }
  long dim() const { return k_ + 1; }

  Value zero() const { return Value(k_ + 1, Rat(0)); }
  bool is_zero(const Value& v) const;
  Value add(const Value& x, const Value& y) const;
  Value sub(const Value& x, const Value& y) const;
  Value neg(const Value& x) const;
  Value scale(const Value& x, const Rat& s) const;
  Value act(const Value& x, const Mat22& g) const;

  // entries of the transform: row j, column i = coeff of x^i in
  // (b+dx)^j (a+cx)^{k-j}
  const std::vector<std::vector<Int>>& table(const Mat22& g) const;

 private:
  long k_;
  mutable std::mutex mu_;
  mutable std::map<Mat22, std::vector<std::vector<Int>>> cache_;
};

// same module with p-adic scalars (used for p-stabilised classical symbols)
class PadicPolyModule {
 public:
  using Scalar = PadicNum;
  using Value = std::vector<PadicNum>;

  PadicPolyModule(long p, long k, long prec) : p_(p), k_(k), prec_(prec), ratmod_(k) {}
  long weight() const { return k_; }
  long prime() const { return p_; }
  long prec() const { return prec_; }

  Value zero() const { return Value(k_ + 1, PadicNum::zero(p_, PadicNum::PREC_EXACT)); }
  Value add(const Value& x, const Value& y) const;
  Value sub(const Value& x, const Value& y) const;
  Value neg(const Value& x) const;
  Value scale(const Value& x, const PadicNum& s) const;
  Value act(const Value& x, const Mat22& g) const;
  Value from_rat(const std::vector<Rat>& v) const;
  // min over entries of the guaranteed valuation
  long defect_valuation(const Value& v) const;

 private:
  long p_, k_, prec_;
  RatPolyModule ratmod_;
};

// ---------------------------------------------------------------------
// finite-approximation distributions: moments m_0..m_{C-1}, m_j carried
// modulo p^{N-j} in the filtration normal form

class DistModule {
 public:
  using Scalar = PadicNum;
  using Value = std::vector<PadicNum>;

  DistModule(long p, long k, long nmoments);
  long prime() const { return p_; }
  long weight() const { return k_; }
  long nmoments() const { return nmom_; }
  long work_prec() const { return work_; }

  Value zero() const { return Value(nmom_, PadicNum::zero(p_, PadicNum::PREC_EXACT)); }
  Value add(const Value& x, const Value& y) const;
  Value sub(const Value& x, const Value& y) const;
  Value neg(const Value& x) const;
  Value scale(const Value& x, const PadicNum& s) const;
  Value act(const Value& x, const Mat22& g) const;

  // truncate to the filtration: moment j to absolute precision N-j
  Value fil_truncate(const Value& x, long N) const;
  // largest N with x in Fil^N as far as the stored precision shows:
  // min_j (valuation lower bound of m_j + j), capped by nmoments
  long fil_level(const Value& x) const;

  // build the table for g ahead of parallel use
  void warm(const Mat22& g) const;

 private:
  struct Table {
    std::vector<std::vector<PadicNum>> rows;  // rows[j][i]
    bool uniform_tail;                        // p | d: dropped tail has v >= nmom
  };
  const Table& table(const Mat22& g) const;

  long p_, k_, nmom_, work_;
  mutable std::mutex mu_;
  mutable std::map<Mat22, Table> cache_;
};

 // first k+1 moments at their filtration precision
PadicPolyModule::Value specialize(const DistModule& D, const DistModule::Value& v);

}  // namespace ovc

#endif
