#include "overconv/coeffs.hpp"

namespace ovc {

// ---------------------------------------------------------------------
// RatPolyModule

bool RatPolyModule::is_zero(const Value& v) const {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

RatPolyModule::Value RatPolyModule::add(const Value& x, const Value& y) const {
  Value r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

RatPolyModule::Value RatPolyModule::sub(const Value& x, const Value& y) const {
  Value r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

RatPolyModule::Value RatPolyModule::neg(const Value& x) const {
  Value r(x);
  for (auto& v : r) v = -v;
  return r;
}

RatPolyModule::Value RatPolyModule::scale(const Value& x, const Rat& s) const {
  Value r(x);
  for (auto& v : r) v *= s;
  return r;
}

const std::vector<std::vector<Int>>& RatPolyModule::table(const Mat22& g) const {
  std::scoped_lock lk(mu_);
  auto it = cache_.find(g);
  if (it != cache_.end()) return it->second;
  // row j = coefficients of (b+dx)^j (a+cx)^{k-j}, degree exactly k
  long n = k_ + 1;
  std::vector<std::vector<Int>> rows(n, std::vector<Int>(n, 0));
  // powers of (b+dx) and (a+cx)
  std::vector<std::vector<Int>> bd(n), ac(n);
  bd[0] = {1};
  ac[0] = {1};
  for (long j = 1; j < n; ++j) {
    bd[j].assign(j + 1, 0);
    ac[j].assign(j + 1, 0);
    for (long i = 0; i <= j - 1; ++i) {
      bd[j][i] += Int(g.b) * bd[j - 1][i];
      bd[j][i + 1] += Int(g.d) * bd[j - 1][i];
      ac[j][i] += Int(g.a) * ac[j - 1][i];
      ac[j][i + 1] += Int(g.c) * ac[j - 1][i];
    }
  }
  for (long j = 0; j < n; ++j) {
    for (size_t s = 0; s < bd[j].size(); ++s)
      for (size_t t = 0; t < ac[k_ - j].size(); ++t) rows[j][s + t] += bd[j][s] * ac[k_ - j][t];
  }
  return cache_.emplace(g, std::move(rows)).first->second;
}

RatPolyModule::Value RatPolyModule::act(const Value& x, const Mat22& g) const {
  const auto& T = table(g);
  Value r = zero();
  for (long j = 0; j <= k_; ++j)
    for (long i = 0; i <= k_; ++i)
      if (T[j][i] != 0) r[j] += Rat(T[j][i]) * x[i];
  return r;
}

// ---------------------------------------------------------------------
// PadicPolyModule

PadicPolyModule::Value PadicPolyModule::add(const Value& x, const Value& y) const {
  Value r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

PadicPolyModule::Value PadicPolyModule::sub(const Value& x, const Value& y) const {
  Value r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

PadicPolyModule::Value PadicPolyModule::neg(const Value& x) const {
  Value r(x);
  for (auto& v : r) v = -v;
  return r;
}

PadicPolyModule::Value PadicPolyModule::scale(const Value& x, const PadicNum& s) const {
  Value r(x);
  for (auto& v : r) v = v * s;
  return r;
}

PadicPolyModule::Value PadicPolyModule::act(const Value& x, const Mat22& g) const {
  const auto& T = ratmod_.table(g);
  Value r = zero();
  for (long j = 0; j <= k_; ++j)
    for (long i = 0; i <= k_; ++i)
      if (T[j][i] != 0) r[j] += PadicNum::exact_int(p_, T[j][i]) * x[i];
  return r;
}

PadicPolyModule::Value PadicPolyModule::from_rat(const std::vector<Rat>& v) const {
  Value r;
  r.reserve(v.size());
  for (const auto& q : v) r.push_back(PadicNum(p_, q, prec_));
  return r;
}

long PadicPolyModule::defect_valuation(const Value& v) const {
  long m = PadicNum::PREC_EXACT;
  for (const auto& x : v) m = std::min(m, x.is_zero() ? x.abs_prec() : x.valuation());
  return m;
}

// ---------------------------------------------------------------------
// DistModule

DistModule::DistModule(long p, long k, long nmoments)
    : p_(p), k_(k), nmom_(nmoments), work_(nmoments + 4) {
  if (nmom_ <= k_) throw std::domain_error("DistModule: need more moments than the weight");
}

DistModule::Value DistModule::add(const Value& x, const Value& y) const {
  Value r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] += y[i];
  return r;
}

DistModule::Value DistModule::sub(const Value& x, const Value& y) const {
  Value r(x);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= y[i];
  return r;
}

DistModule::Value DistModule::neg(const Value& x) const {
  Value r(x);
  for (auto& v : r) v = -v;
  return r;
}

DistModule::Value DistModule::scale(const Value& x, const PadicNum& s) const {
  Value r(x);
  for (auto& v : r) v = v * s;
  return r;
}

const DistModule::Table& DistModule::table(const Mat22& g) const {
  {
    std::scoped_lock lk(mu_);
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
  }
  if (g.c % p_ == 0 && mod_pos(Int(g.a), p_) == 0)
    throw std::domain_error("DistModule: matrix outside the Sigma_0(p) monoid (p | a)");
  if (g.c % p_ != 0) throw std::domain_error("DistModule: matrix outside the Sigma_0(p) monoid (p does not divide c)");

  Table T;
  T.uniform_tail = (g.d % p_ == 0);
  T.rows.assign(nmom_, std::vector<PadicNum>(nmom_, PadicNum::zero(p_, PadicNum::PREC_EXACT)));

  auto exact = [&](const Int& n) { return PadicNum(p_, n, work_ + 2); };

  // exact polynomial rows j <= k: (b+dx)^j (a+cx)^{k-j}
  {
    std::vector<std::vector<Int>> bd(k_ + 1), ac(k_ + 1);
    bd[0] = {1};
    ac[0] = {1};
    for (long j = 1; j <= k_; ++j) {
      bd[j].assign(j + 1, 0);
      ac[j].assign(j + 1, 0);
      for (long i = 0; i < j; ++i) {
        bd[j][i] += Int(g.b) * bd[j - 1][i];
        bd[j][i + 1] += Int(g.d) * bd[j - 1][i];
        ac[j][i] += Int(g.a) * ac[j - 1][i];
        ac[j][i + 1] += Int(g.c) * ac[j - 1][i];
      }
    }
    for (long j = 0; j <= k_ && j < nmom_; ++j) {
      for (size_t s = 0; s < bd[j].size(); ++s)
        for (size_t t = 0; t < ac[k_ - j].size(); ++t) {
          long col = static_cast<long>(s + t);
          if (col < nmom_) T.rows[j][col] += exact(bd[j][s] * ac[k_ - j][t]);
        }
    }
  }

  // series rows j > k: row_j = row_{j-1} * (b+dx)/(a+cx), starting from
  // row_k = (b+dx)^k; q(x) = (b+dx) * (a+cx)^{-1} truncated at x^nmom
  if (nmom_ > k_ + 1) {
    std::vector<PadicNum> s(nmom_, PadicNum::zero(p_, work_ + 2));  // (a+cx)^{-1}
    PadicNum ainv = exact(Int(g.a)).inverse().truncate_abs(work_ + 2);
    PadicNum ratio = -(exact(Int(g.c)) * ainv);  // -c/a, valuation >= 1
    PadicNum cur = ainv;
    for (long i = 0; i < nmom_; ++i) {
      s[i] = cur;
      cur = (cur * ratio).truncate_abs(work_ + 2);
    }
    std::vector<PadicNum> q(nmom_, PadicNum::zero(p_, work_ + 2));
    for (long i = 0; i < nmom_; ++i) {
      q[i] = exact(Int(g.b)) * s[i];
      if (i > 0) q[i] += exact(Int(g.d)) * s[i - 1];
    }
    std::vector<PadicNum> row(nmom_, PadicNum::zero(p_, work_ + 2));
    // row_k as exact polynomial (degree k), entries already in T.rows[k]
    for (long i = 0; i < nmom_; ++i) row[i] = T.rows[std::min(k_, nmom_ - 1)][i];
    for (long j = k_ + 1; j < nmom_; ++j) {
      std::vector<PadicNum> nxt(nmom_, PadicNum::zero(p_, work_ + 2));
      for (long i = 0; i < nmom_; ++i) {
        if (row[i].is_zero() && row[i].abs_prec() >= work_) continue;
        for (long t = 0; i + t < nmom_; ++t) nxt[i + t] += row[i] * q[t];
      }
      for (auto& v : nxt) v = v.truncate_abs(work_ + 2);
      T.rows[j] = nxt;
      row = std::move(nxt);
    }
  }

  std::scoped_lock lk(mu_);
  return cache_.emplace(g, std::move(T)).first->second;
}

void DistModule::warm(const Mat22& g) const { table(g); }

DistModule::Value DistModule::act(const Value& x, const Mat22& g) const {
  const Table& T = table(g);
  Value r(nmom_, PadicNum::zero(p_, PadicNum::PREC_EXACT));
  for (long j = 0; j < nmom_; ++j) {
    PadicNum acc = PadicNum::zero(p_, PadicNum::PREC_EXACT);
    const auto& row = T.rows[j];
    for (long i = 0; i < nmom_; ++i) {
      const PadicNum& c = row[i];
      if (c.is_zero() && c.abs_prec() >= work_) continue;
      acc += c * x[i];
    }
    // dropped tail terms x^i, i >= nmom: coefficient valuation at least
    // nmom (uniform case, p | d) or nmom - j; moments are assumed integral
    long tail = T.uniform_tail ? nmom_ : std::max<long>(nmom_ - j, 0);
    if (j > k_ || !T.uniform_tail) {
      if (j > k_) acc = acc.truncate_abs(tail);
    }
    r[j] = acc;
  }
  return r;
}

DistModule::Value DistModule::fil_truncate(const Value& x, long N) const {
  Value r(x);
  for (long j = 0; j < nmom_; ++j) r[j] = r[j].truncate_abs(std::max<long>(N - j, 0));
  return r;
}

long DistModule::fil_level(const Value& x) const {
  long lvl = nmom_;
  for (long j = 0; j < nmom_; ++j) {
    long vb = x[j].is_zero() ? x[j].abs_prec() : x[j].valuation();
    lvl = std::min(lvl, vb + j);
  }
  return lvl;
}

PadicPolyModule::Value specialize(const DistModule& D, const DistModule::Value& v) {
  PadicPolyModule::Value out;
  for (long j = 0; j <= D.weight(); ++j) out.push_back(v[j]);
  return out;
}

}  // namespace ovc
