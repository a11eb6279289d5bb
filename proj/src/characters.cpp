#include "overconv/characters.hpp"

namespace ovc {

FiniteCharacter::FiniteCharacter(long p, int m, long e1, long e2) : p_(p), m_(m), e1_(e1), e2_(e2) {
  if (m < 0) throw std::domain_error("FiniteCharacter: negative conductor exponent");
  pm_ = 1;
  for (int i = 0; i < m; ++i) pm_ *= p;
  if (m_ == 0) return;
  long phi = (p_ - 1) * (pm_ / p_);
  e1_ = ((e1_ % (p_ - 1)) + (p_ - 1)) % (p_ - 1);
  long wild_order = pm_ / p_;
  if (wild_order > 1)
    e2_ = ((e2_ % wild_order) + wild_order) % wild_order;
  else
    e2_ = 0;
  g_ = primitive_root(p_, m_);
  dlog_table_.assign(pm_, -1);
  Int x = 1;
  for (long s = 0; s < phi; ++s) {
    dlog_table_[static_cast<long>(x)] = s;
    x = mod_pos(x * g_, pm_);
  }
}

bool FiniteCharacter::is_primitive() const {
  if (m_ == 0) return true;
  if (m_ == 1) return e1_ != 0;
  return e2_ % p_ != 0;
}

long FiniteCharacter::order() const {
  if (m_ == 0) return 1;
  long t = (e1_ == 0) ? 1 : (p_ - 1) / gcd_l(e1_, p_ - 1);
  long wild_order = pm_ / p_;
  long w = (e2_ == 0) ? 1 : wild_order / gcd_l(e2_, wild_order);
  return t / gcd_l(t, w) * w;  // lcm
}

FiniteCharacter FiniteCharacter::bar() const {
  if (m_ == 0) return *this;
  return FiniteCharacter(p_, m_, -e1_, -e2_);
}

long FiniteCharacter::dlog(const Int& x) const {
  long r = static_cast<long>(mod_pos(x, pm_));
  long s = dlog_table_[r];
  if (s < 0) throw std::domain_error("FiniteCharacter: argument not a unit");
  return s;
}

PadicNum FiniteCharacter::value_padic(const Int& x, long prec) const {
  if (m_ == 0) return PadicNum::exact_int(p_ == 0 ? 2 : p_, 1).truncate_abs(prec);
  if (mod_pos(x, p_) == 0) return PadicNum::zero(p_, prec);
  if (!is_tame()) throw std::domain_error("FiniteCharacter: wild character has no Z_p values");
  long s = dlog(x);
  Int gg = pow_mod(g_, Int(e1_) * s, p_);
  return teichmuller(gg, p_, prec);
}

CycloElt FiniteCharacter::value(const Int& x, const CycloField& F, long prec) const {
  if (m_ == 0) return F.one();
  if (mod_pos(x, p_) == 0) return F.zero();
  long s = dlog(x);
  CycloElt tame = F.from_padic(teichmuller(pow_mod(g_, Int(e1_) * s, p_), p_, prec));
  if (is_tame()) return tame;
  long wild_order = pm_ / p_;  // p^{m-1}
  if (F.m() < m_ - 1) throw std::domain_error("FiniteCharacter: field too small for wild values");
  long pow_gap = 1;
  for (int i = 0; i < F.m() - (m_ - 1); ++i) pow_gap *= p_;
  long pm_field = pow_gap;
  for (int i = 0; i < m_ - 1; ++i) pm_field *= p_;
  long e = static_cast<long>(mod_pos(Int(e2_) * s, wild_order));
  return tame * F.root_power(e * pow_gap);
}

std::vector<FiniteCharacter> FiniteCharacter::primitive_characters(long p, int m) {
  std::vector<FiniteCharacter> out;
  if (m == 0) {
    out.emplace_back();
    return out;
  }
  long wild_order = 1;
  for (int i = 0; i < m - 1; ++i) wild_order *= p;
  for (long e1 = 0; e1 < p - 1; ++e1) {
    for (long e2 = 0; e2 < wild_order; ++e2) {
      FiniteCharacter chi(p, m, e1, e2);
      if (chi.is_primitive()) out.push_back(chi);
    }
  }
  return out;
}

CycloElt gauss_sum(const FiniteCharacter& chi, const CycloField& F, long prec) {
  if (!chi.is_primitive() || chi.is_trivial())
    throw std::domain_error("gauss_sum: character must be primitive of conductor >= p");
  if (F.p() != chi.p() || F.m() < chi.m()) throw std::domain_error("gauss_sum: field too small");
  long pm = chi.modulus();
  long gap = 1;
  for (int i = 0; i < F.m() - chi.m(); ++i) gap *= chi.p();
  CycloElt acc = F.zero();
  for (long a = 1; a < pm; ++a) {
    if (gcd_l(a, chi.p()) != 1) continue;
    acc = acc + (chi.value(a, F, prec) * F.root_power(a * gap));
  }
  return acc;
}

}  // namespace ovc
