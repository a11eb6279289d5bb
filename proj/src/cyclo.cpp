#include "overconv/cyclo.hpp"

#include <sstream>

namespace ovc {

CycloField::CycloField(long p, int m, long prec) : p_(p), m_(m), prec_(prec) {
  if (m < 1) throw std::domain_error("CycloField: m >= 1 required");
  pm_ = 1;
  for (int i = 0; i < m; ++i) pm_ *= p;
  deg_ = (p - 1) * (pm_ / p);
}

CycloElt CycloField::zero() const {
  return CycloElt(this, std::vector<PadicNum>(deg_, zero_scalar()));
}

CycloElt CycloField::one() const { return from_padic(PadicNum::exact_int(p_, 1)); }

CycloElt CycloField::from_padic(const PadicNum& x) const {
  std::vector<PadicNum> c(deg_, zero_scalar());
  c[0] = x;
  return CycloElt(this, c);
}

CycloElt CycloField::from_rat(const Rat& q) const { return from_padic(PadicNum(p_, q, prec_)); }

CycloElt CycloField::root_power(long e) const {
  e %= pm_;
  if (e < 0) e += pm_;
  std::vector<PadicNum> c(deg_, zero_scalar());
  if (e < deg_) {
    c[e] = PadicNum::exact_int(p_, 1);
  } else {
    // X^e = -sum_{i<p-1} X^{e-deg+i*p^{m-1}}, all exponents below deg
    long q = pm_ / p_;
    for (long i = 0; i + 1 < p_; ++i) c[e - deg_ + i * q] = PadicNum::exact_int(p_, -1);
  }
  return CycloElt(this, c);
}

CycloElt::CycloElt(const CycloField* F, std::vector<PadicNum> coeffs) : F_(F), c_(std::move(coeffs)) {
  if (static_cast<long>(c_.size()) != F->degree()) throw std::logic_error("CycloElt: wrong coefficient count");
}

CycloElt CycloElt::operator+(const CycloElt& o) const {
  std::vector<PadicNum> c(c_);
  for (size_t i = 0; i < c.size(); ++i) c[i] = c[i] + o.c_[i];
  return CycloElt(F_, c);
}

CycloElt CycloElt::operator-() const {
  std::vector<PadicNum> c(c_);
  for (auto& x : c) x = -x;
  return CycloElt(F_, c);
}

CycloElt CycloElt::operator-(const CycloElt& o) const { return *this + (-o); }

CycloElt CycloElt::scaled(const PadicNum& s) const {
  std::vector<PadicNum> c(c_);
  for (auto& x : c) x = x * s;
  return CycloElt(F_, c);
}

CycloElt CycloElt::operator*(const CycloElt& o) const {
  long d = F_->degree();
  long q = F_->pm_ / F_->p_;
  std::vector<PadicNum> prod(2 * d - 1, F_->zero_scalar());
  for (long i = 0; i < d; ++i) {
    if (c_[i].is_zero() && c_[i].abs_prec() >= PadicNum::PREC_EXACT / 2) continue;
    for (long j = 0; j < d; ++j) prod[i + j] += c_[i] * o.c_[j];
  }
  // reduce X^t for t >= d via X^d = -sum_{i<p-1} X^{i q}
  for (long t = 2 * d - 2; t >= d; --t) {
    PadicNum ct = prod[t];
    if (ct.is_zero() && ct.abs_prec() >= PadicNum::PREC_EXACT / 2) continue;
    prod[t] = F_->zero_scalar();
    for (long i = 0; i + 1 < F_->p_; ++i) prod[t - d + i * q] -= ct;
  }
  prod.resize(d);
  return CycloElt(F_, prod);
}

CycloElt CycloElt::galois(long u) const {
  long pm = F_->pm_;
  u %= pm;
  if (u < 0) u += pm;
  if (gcd_l(u, F_->p_) != 1) throw std::domain_error("CycloElt::galois: exponent not coprime to p");
  CycloElt r = F_->zero();
  for (long t = 0; t < F_->degree(); ++t) {
    if (c_[t].is_zero() && c_[t].abs_prec() >= PadicNum::PREC_EXACT / 2) continue;
    r = r + F_->root_power((t * u) % pm).scaled(c_[t]);
  }
  return r;
}

CycloElt CycloElt::conj() const { return galois(F_->pm_ - 1); }

long CycloElt::valuation_lower_bound() const {
  long v = PadicNum::PREC_EXACT;
  for (const auto& x : c_) {
    long b = x.is_zero() ? x.abs_prec() : x.valuation();
    v = std::min(v, b);
  }
  return v;
}

PadicNum CycloElt::as_padic() const {
  long worst = PadicNum::PREC_EXACT;
  for (size_t i = 1; i < c_.size(); ++i) {
    if (!c_[i].is_zero())
      throw std::domain_error("CycloElt::as_padic: element not in the ground field");
    worst = std::min(worst, c_[i].abs_prec());
  }
  return c_[0].truncate_abs(worst);
}

std::string CycloElt::str() const {
  std::ostringstream os;
  bool first = true;
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero() && c_[i].abs_prec() >= PadicNum::PREC_EXACT / 2) continue;
    if (!first) os << " + ";
    os << "(" << c_[i].str() << ")";
    if (i == 1) os << "*z";
    if (i > 1) os << "*z^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace ovc
