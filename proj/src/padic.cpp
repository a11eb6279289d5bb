#include "overconv/padic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ovc {

long primitive_root(long p, int m) {
  // smallest primitive root mod p, upgraded to p^m if needed
  Int mod = p;
  long phi = p - 1;
  auto order_is_phi = [&](long g) {
    // check g^(phi/q) != 1 for prime q | phi
    long n = phi;
    for (long q = 2; q * q <= n; ++q) {
      if (n % q == 0) {
        if (pow_mod(g, phi / q, mod) == 1) return false;
        while (n % q == 0) n /= q;
      }
    }
    if (n > 1 && pow_mod(g, phi / n, mod) == 1) return false;
    return true;
  };
  long g = 2;
  while (!order_is_phi(g)) ++g;
  if (m == 1) return g;
  // g is primitive mod p^m unless g^(p-1) = 1 mod p^2; then g+p works
  Int p2 = Int(p) * p;
  if (pow_mod(g, p - 1, p2) == 1) g += p;
  return g;
}

PadicNum::PadicNum(long p, const Int& n, long abs_prec) : p_(p), val_(0), unit_(n), relprec_(0) {
  if (n == 0) {
    val_ = abs_prec;
    return;
  }
  val_ = val_p(n, p);
  if (val_ >= abs_prec) {
    unit_ = 0;
    relprec_ = 0;
    val_ = abs_prec;
    return;
  }
  relprec_ = std::min<long>(abs_prec - val_, PREC_EXACT);
  Int u = n / pow_int(p, static_cast<unsigned long>(val_));
  if (relprec_ >= PREC_EXACT / 2) {
    // exact integers keep their unit unreduced
    unit_ = u;
    relprec_ = PREC_EXACT;
  } else {
    unit_ = mod_pos(u, pow_int(p, static_cast<unsigned long>(relprec_)));
  }
}

PadicNum::PadicNum(long p, const Rat& q, long abs_prec) {
  if (q == 0) {
    *this = zero(p, abs_prec);
    return;
  }
  if (denominator(q) == 1) {
    *this = PadicNum(p, numerator(q), abs_prec);
    return;
  }
  if (abs_prec >= PREC_EXACT / 2)
    throw std::domain_error("PadicNum: exact precision requested for a non-integral rational");
  Int num = numerator(q), den = denominator(q);
  long vd = val_p(den, p);
  Int den_unit = den / pow_int(p, static_cast<unsigned long>(vd));
  long vn = val_p(num, p);
  long work = std::max<long>(abs_prec + vd - vn + 4, 4);
  PadicNum n(p, num, vn + work);
  Int mod = pow_int(p, static_cast<unsigned long>(work));
  PadicNum dinv(p, inv_mod(den_unit, mod), work);
  PadicNum r = n * dinv;
  r.val_ -= vd;
  *this = r.truncate_abs(abs_prec);
}

void PadicNum::canonicalize(long avail_digits) {
  if (unit_ == 0) {
    relprec_ = 0;
    return;
  }
  long v = val_p(unit_, p_);
  if (v >= avail_digits) {
    val_ += avail_digits;
    unit_ = 0;
    relprec_ = 0;
    return;
  }
  if (v > 0) {
    unit_ /= pow_int(p_, static_cast<unsigned long>(v));
    val_ += v;
  }
  relprec_ = avail_digits - v;
  unit_ = mod_pos(unit_, pow_int(p_, static_cast<unsigned long>(std::min(relprec_, (long)1000000))));
}

PadicNum PadicNum::truncate_abs(long abs_prec) const {
  if (abs_prec >= this->abs_prec() || abs_prec >= PREC_EXACT / 2) return *this;
  if (unit_ == 0) return zero(p_, std::min(val_, abs_prec));
  if (abs_prec <= val_) return zero(p_, abs_prec);
  PadicNum r = *this;
  r.relprec_ = abs_prec - val_;
  r.unit_ = mod_pos(unit_, pow_int(p_, static_cast<unsigned long>(r.relprec_)));
  r.canonicalize(r.relprec_);
  return r;
}

PadicNum PadicNum::operator-() const {
  if (unit_ == 0) return *this;
  PadicNum r = *this;
  if (relprec_ >= PREC_EXACT) {
    r.unit_ = -unit_;
  } else {
    r.unit_ = pow_int(p_, static_cast<unsigned long>(relprec_)) - unit_;
  }
  return r;
}

PadicNum PadicNum::operator+(const PadicNum& o) const {
  if (p_ == 0) return o;
  if (o.p_ == 0) return *this;
  if (unit_ == 0 && o.unit_ == 0) return zero(p_, std::min(val_, o.val_));
  if (unit_ == 0) {
    // O(p^val) + x
    if (val_ <= o.val_) return zero(p_, val_);
    return o.truncate_abs(val_);
  }
  if (o.unit_ == 0) return o + *this;
  const PadicNum& a = (val_ <= o.val_) ? *this : o;
  const PadicNum& b = (val_ <= o.val_) ? o : *this;
  long A = std::min(a.abs_prec(), b.abs_prec());
  if (A <= a.val_) return zero(p_, A);
  long m = A - a.val_;  // digits available above a.val_
  PadicNum r;
  r.p_ = p_;
  r.val_ = a.val_;
  Int u = a.unit_ + b.unit_ * pow_int(p_, static_cast<unsigned long>(b.val_ - a.val_));
  if (m >= PREC_EXACT / 2) {
    r.unit_ = u;
    if (r.unit_ == 0) return zero(p_, PREC_EXACT);
    long v = val_p(r.unit_, p_);
    r.unit_ /= pow_int(p_, static_cast<unsigned long>(v));
    r.val_ += v;
    r.relprec_ = PREC_EXACT;
    return r;
  }
  r.unit_ = mod_pos(u, pow_int(p_, static_cast<unsigned long>(m)));
  if (r.unit_ == 0) return zero(p_, A);
  r.canonicalize(m);
  return r;
}

PadicNum PadicNum::operator*(const PadicNum& o) const {
  if (unit_ == 0 || o.unit_ == 0) {
    // O(p^A) * (u p^v + O(..)) = O(p^{A+v}); O * O similar
    long av = unit_ == 0 ? val_ : val_;
    long bv = o.unit_ == 0 ? o.val_ : o.val_;
    return zero(p_ ? p_ : o.p_, av + bv);
  }
  PadicNum r;
  r.p_ = p_;
  r.val_ = val_ + o.val_;
  r.relprec_ = std::min(relprec_, o.relprec_);
  if (r.relprec_ >= PREC_EXACT) {
    r.unit_ = unit_ * o.unit_;
  } else {
    r.unit_ = mul_mod(unit_, o.unit_, pow_int(p_, static_cast<unsigned long>(r.relprec_)));
  }
  return r;
}

PadicNum PadicNum::inverse() const {
  if (unit_ == 0) throw std::domain_error("PadicNum: inverse of zero-at-precision");
  PadicNum r;
  r.p_ = p_;
  r.val_ = -val_;
  // inverting an exact element needs a finite working precision
  r.relprec_ = std::min<long>(relprec_, 256);
  Int mod = pow_int(p_, static_cast<unsigned long>(r.relprec_));
  r.unit_ = inv_mod(unit_, mod);
  return r;
}

PadicNum PadicNum::pow(long e) const {
  if (e == 0) return exact_int(p_, 1);
  if (e < 0) return inverse().pow(-e);
  PadicNum r = exact_int(p_, 1);
  PadicNum b = *this;
  long ee = e;
  while (ee) {
    if (ee & 1) r = r * b;
    b = b * b;
    ee >>= 1;
  }
  return r;
}

Int PadicNum::residue(long abs_prec) const {
  if (unit_ == 0) return 0;
  if (val_ < 0) throw std::domain_error("PadicNum: residue of negative-valuation element");
  Int m = pow_int(p_, static_cast<unsigned long>(abs_prec));
  return mod_pos(unit_ * pow_int(p_, static_cast<unsigned long>(val_)), m);
}

std::string PadicNum::str() const {
  std::ostringstream os;
  if (unit_ == 0) {
    os << "O(" << p_ << "^" << val_ << ")";
    return os.str();
  }
  os << unit_;
  if (val_ != 0) os << "*" << p_ << "^" << val_;
  if (relprec_ < PREC_EXACT) os << " + O(" << p_ << "^" << abs_prec() << ")";
  return os.str();
}

std::string PadicNum::serial() const {
  std::ostringstream os;
  if (unit_ == 0) {
    os << "O:" << val_;
  } else {
    os << val_ << ":" << unit_ << ":" << relprec_;
  }
  return os.str();
}

PadicNum teichmuller(const Int& a, long p, long N) {
  if (mod_pos(a, p) == 0) throw std::domain_error("teichmuller: argument divisible by p");
  Int mod = pow_int(p, static_cast<unsigned long>(N));
  Int x = mod_pos(a, mod);
  for (long i = 0; i <= N + 1; ++i) {
    Int y = pow_mod(x, p, mod);
    if (y == x) break;
    x = y;
  }
  return PadicNum(p, x, N);
}

PadicNum padic_log(const PadicNum& x) {
  long p = x.prime();
  PadicNum t = x - PadicNum::exact_int(p, 1);
  if (t.is_zero()) return PadicNum::zero(p, t.abs_prec() == PadicNum::PREC_EXACT ? x.abs_prec() : t.abs_prec());
  if (t.valuation() < 1) throw std::domain_error("padic_log: argument not = 1 mod p");
  long A = x.abs_prec();
  if (A >= PadicNum::PREC_EXACT / 2) A = 2 * t.valuation() + 40;  // exact inputs: pick a working precision
  long vt = t.valuation();
  PadicNum sum = PadicNum::zero(p, A);
  PadicNum tn = PadicNum::exact_int(p, 1);
  long n = 0;
  while (true) {
    ++n;
    long logpn = 0;
    for (long q = p; q <= n; q *= p) ++logpn;
    if (n * vt - logpn >= A && n > 1) break;
    tn = (tn * t).truncate_abs(A + logpn + 2);
    PadicNum term = tn / PadicNum::exact_int(p, n);
    if ((n & 1) == 0) term = -term;
    sum += term;
  }
  return sum.truncate_abs(A);
}

PadicNum padic_exp(const PadicNum& x) {
  long p = x.prime();
  if (!x.is_zero() && x.valuation() < 1) throw std::domain_error("padic_exp: valuation < 1");
  long A = x.abs_prec();
  if (A >= PadicNum::PREC_EXACT / 2) A = 40;
  PadicNum sum = PadicNum::exact_int(p, 1).truncate_abs(A);
  PadicNum term = PadicNum::exact_int(p, 1);
  long vx = x.is_zero() ? A : x.valuation();
  long n = 0;
  while (true) {
    ++n;
    // v(x^n / n!) >= n*vx - (n-1)/(p-1) -> stop once the floor clears A
    long vfact = 0;
    for (long q = p; q <= n; q *= p) vfact += n / q;
    if (n * vx - vfact >= A) break;
    term = (term * x).truncate_abs(A + vfact + 2) / PadicNum::exact_int(p, n);
    sum += term;
  }
  return sum.truncate_abs(A);
}

void PadicPoly::trim() {
  while (!c_.empty() && c_.back().is_zero() && c_.back().abs_prec() >= PadicNum::PREC_EXACT / 2) c_.pop_back();
}

PadicNum PadicPoly::eval(const PadicNum& x) const {
  if (c_.empty()) return PadicNum::zero(x.prime(), PadicNum::PREC_EXACT);
  PadicNum r = c_.back();
  for (int i = degree() - 1; i >= 0; --i) r = r * x + c_[i];
  return r;
}

PadicPoly PadicPoly::derivative() const {
  std::vector<PadicNum> d;
  for (int i = 1; i <= degree(); ++i) d.push_back(c_[i] * PadicNum::exact_int(c_[i].prime(), i));
  return PadicPoly(d);
}

static PadicNum newton_lift(const PadicPoly& f, const PadicPoly& fp, long p, long r0, long N) {
  Int x = mod_pos(Int(r0), p);
  long prec = 1;
  while (prec < N) {
    prec = std::min(2 * prec, N);
    PadicNum xx(p, x, prec);
    PadicNum upd = xx - f.eval(xx).truncate_abs(prec) / fp.eval(xx);
    x = upd.residue(prec);
  }
  return PadicNum(p, x, N);
}

std::vector<PadicNum> hensel_roots(const PadicPoly& f, long p, long N) {
  int deg = f.degree();
  if (deg <= 0) throw std::domain_error("hensel_roots: constant polynomial");
  PadicPoly fp = f.derivative();
  std::vector<PadicNum> roots;

  // work deep enough that positive-valuation roots carry N relative digits
  const PadicNum& c0 = f.coeff(0);
  long vc0 = (!c0.is_zero() && c0.valuation() > 0) ? c0.valuation() : 0;
  N += vc0;

  // residue roots r with f'(r) a unit lift by Newton; for a quadratic whose
  // Newton polygon has slopes {0, v} with v > 0, both roots are visible this
  // way (residues alpha mod p and 0). Residue roots where f' vanishes mod p
  // are genuine obstructions (e.g. supersingular Hecke polynomials).
  long obstructed = -1;
  for (long r = 0; r < p; ++r) {
    PadicNum fr = f.eval(PadicNum::exact_int(p, r));
    bool root_mod_p = fr.is_zero() || fr.valuation() >= 1;
    if (!root_mod_p) continue;
    PadicNum dr = fp.eval(PadicNum::exact_int(p, r));
    if (!dr.is_zero() && dr.valuation() == 0) {
      roots.push_back(newton_lift(f, fp, p, r, N));
    } else {
      obstructed = r;
    }
  }
  if (obstructed >= 0)
    throw std::domain_error(
        "hensel_roots: residue root " + std::to_string(obstructed) +
        " is not simple mod p (irregular: Newton polygon slope not separable)");
  if (roots.empty())
    throw std::domain_error("hensel_roots: no residue roots in the ground field");
  return roots;
}

}  // namespace ovc
