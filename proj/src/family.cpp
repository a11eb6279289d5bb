#include "overconv/family.hpp"

#include "overconv/linalg.hpp"

namespace ovc {

FamilyRing::Elt FamilyRing::one() const { return from_padic(PadicNum::exact_int(p_, 1)); }

FamilyRing::Elt FamilyRing::from_padic(const PadicNum& x) const {
  Elt e = zero();
  e[0] = x;
  return e;
}

FamilyRing::Elt FamilyRing::add(const Elt& x, const Elt& y) const {
  Elt r(x);
  for (long i = 0; i < M_; ++i) r[i] += y[i];
  return r;
}

FamilyRing::Elt FamilyRing::sub(const Elt& x, const Elt& y) const {
  Elt r(x);
  for (long i = 0; i < M_; ++i) r[i] -= y[i];
  return r;
}

FamilyRing::Elt FamilyRing::neg(const Elt& x) const {
  Elt r(x);
  for (auto& v : r) v = -v;
  return r;
}

FamilyRing::Elt FamilyRing::mul(const Elt& x, const Elt& y) const {
  Elt r = zero();
  for (long i = 0; i < M_; ++i) {
    if (x[i].is_zero() && x[i].abs_prec() >= PadicNum::PREC_EXACT / 2) continue;
    for (long j = 0; i + j < M_; ++j) r[i + j] += x[i] * y[j];
  }
  return r;
}

FamilyRing::Elt FamilyRing::scale(const Elt& x, const PadicNum& s) const {
  Elt r(x);
  for (auto& v : r) v = v * s;
  return r;
}

FamilyRing::Elt FamilyRing::inverse(const Elt& x) const {
  if (x[0].is_zero() || x[0].valuation() != 0)
    throw std::domain_error("FamilyRing::inverse: constant term is not a unit");
  Elt r = zero();
  r[0] = x[0].inverse();
  // Newton-free: solve degree by degree
  for (long n = 1; n < M_; ++n) {
    PadicNum acc = PadicNum::zero(p_, PadicNum::PREC_EXACT);
    for (long i = 1; i <= n; ++i) acc += x[i] * r[n - i];
    r[n] = -(acc * r[0]);
  }
  return r;
}

PadicNum FamilyRing::at(const Elt& x, const PadicNum& w0) const {
  PadicNum acc = PadicNum::zero(p_, PadicNum::PREC_EXACT);
  PadicNum pw = PadicNum::exact_int(p_, 1);
  for (long i = 0; i < M_; ++i) {
    acc += x[i] * pw;
    pw = pw * w0;
  }
  // truncation of the omitted w^M tail: the dropped coefficients are
  // integral for ordinary families, so the error is O(w0^M)
  long w0v = w0.is_zero() ? w0.abs_prec() : w0.valuation();
  return acc.truncate_abs(std::min(acc.abs_prec(), M_ * w0v));
}

FamilyRing::Elt FamilyRing::universal_character(const PadicNum& z) const {
  if (z.is_zero() || z.valuation() != 0)
    throw std::domain_error("universal_character: z must be a unit");
  long prec = prec_;
  PadicNum om = teichmuller(z.residue(1), p_, prec);
  PadicNum zk = z.pow(k0_);
  PadicNum L = padic_log(z * om.inverse()) / padic_log(PadicNum(p_, Int(1 + p_), prec + 2));
  // (1+w)^L = sum binom(L, n) w^n
  Elt r = zero();
  PadicNum binom = PadicNum::exact_int(p_, 1);
  for (long n = 0; n < M_; ++n) {
    r[n] = zk * binom;
    binom = binom * (L - PadicNum::exact_int(p_, n)) / PadicNum::exact_int(p_, n + 1);
  }
  return r;
}

PadicNum FamilyRing::classical_point(long kprime) const {
  long t = kprime - k0_;
  if (((t % (p_ - 1)) + (p_ - 1)) % (p_ - 1) != 0)
    throw std::domain_error("classical_point: weight not congruent to k0 mod p-1");
  // (1+p)^t - 1
  PadicNum base(p_, Int(1 + p_), prec_ + 4);
  return base.pow(t) - PadicNum::exact_int(p_, 1);
}

// ---------------------------------------------------------------------

FamilyDistModule::FamilyDistModule(const FamilyRing& R, long nmoments)
    : R_(R), nmom_(nmoments), work_(nmoments + 4) {
  if (nmom_ <= R.k0()) throw std::domain_error("FamilyDistModule: need more moments than the weight");
}

FamilyDistModule::Value FamilyDistModule::add(const Value& x, const Value& y) const {
  Value r(x);
  for (long i = 0; i < nmom_; ++i) r[i] = R_.add(r[i], y[i]);
  return r;
}

FamilyDistModule::Value FamilyDistModule::sub(const Value& x, const Value& y) const {
  Value r(x);
  for (long i = 0; i < nmom_; ++i) r[i] = R_.sub(r[i], y[i]);
  return r;
}

FamilyDistModule::Value FamilyDistModule::neg(const Value& x) const {
  Value r(x);
  for (auto& v : r) v = R_.neg(v);
  return r;
}

FamilyDistModule::Value FamilyDistModule::scale(const Value& x, const FamilyRing::Elt& s) const {
  Value r(x);
  for (auto& v : r) v = R_.mul(v, s);
  return r;
}

const FamilyDistModule::Table& FamilyDistModule::table(const Mat22& g) const {
  {
    std::scoped_lock lk(mu_);
    auto it = cache_.find(g);
    if (it != cache_.end()) return it->second;
  }
  long p = R_.p();
  long k0 = R_.k0();
  long M = R_.wdeg();
  if (g.c % p != 0 || mod_pos(Int(g.a), p) == 0)
    throw std::domain_error("FamilyDistModule: matrix outside the Sigma_0(p) monoid");

  Table T;
  T.uniform_tail = (g.d % p == 0);

  auto exact = [&](long n) { return PadicNum(p, Int(n), work_ + 4); };

  // base rows at weight k0 (series in x), as in the single-weight module
  std::vector<std::vector<PadicNum>> base(nmom_, std::vector<PadicNum>(nmom_, PadicNum::zero(p, PadicNum::PREC_EXACT)));
  {
    std::vector<std::vector<Int>> bd(k0 + 1), ac(k0 + 1);
    bd[0] = {1};
    ac[0] = {1};
    for (long j = 1; j <= k0; ++j) {
      bd[j].assign(j + 1, 0);
      ac[j].assign(j + 1, 0);
      for (long i = 0; i < j; ++i) {
        bd[j][i] += Int(g.b) * bd[j - 1][i];
        bd[j][i + 1] += Int(g.d) * bd[j - 1][i];
        ac[j][i] += Int(g.a) * ac[j - 1][i];
        ac[j][i + 1] += Int(g.c) * ac[j - 1][i];
      }
    }
    for (long j = 0; j <= k0 && j < nmom_; ++j)
      for (size_t s = 0; s < bd[j].size(); ++s)
        for (size_t t = 0; t < ac[k0 - j].size(); ++t) {
          long col = static_cast<long>(s + t);
          if (col < nmom_) base[j][col] += PadicNum(p, Int(bd[j][s] * ac[k0 - j][t]), work_ + 4);
        }
    if (nmom_ > k0 + 1) {
      std::vector<PadicNum> sinv(nmom_, PadicNum::zero(p, work_ + 4));
      PadicNum ainv = exact(g.a).inverse().truncate_abs(work_ + 4);
      PadicNum ratio = -(exact(g.c) * ainv);
      PadicNum cur = ainv;
      for (long i = 0; i < nmom_; ++i) {
        sinv[i] = cur;
        cur = (cur * ratio).truncate_abs(work_ + 4);
      }
      std::vector<PadicNum> q(nmom_, PadicNum::zero(p, work_ + 4));
      for (long i = 0; i < nmom_; ++i) {
        q[i] = exact(g.b) * sinv[i];
        if (i > 0) q[i] += exact(g.d) * sinv[i - 1];
      }
      std::vector<PadicNum> row = base[k0];
      for (long j = k0 + 1; j < nmom_; ++j) {
        std::vector<PadicNum> nxt(nmom_, PadicNum::zero(p, work_ + 4));
        for (long i = 0; i < nmom_; ++i) {
          if (row[i].is_zero() && row[i].abs_prec() >= work_) continue;
          for (long t = 0; i + t < nmom_; ++t) nxt[i + t] += row[i] * q[t];
        }
        for (auto& v : nxt) v = v.truncate_abs(work_ + 4);
        base[j] = nxt;
        row = std::move(nxt);
      }
    }
  }

  // family factor (1+w)^{Lambda(x)} with Lambda = log<a+cx>/log(1+p):
  // C_n(x) = binom(Lambda, n) as a series in x
  std::vector<std::vector<PadicNum>> C(M, std::vector<PadicNum>(nmom_, PadicNum::zero(p, work_ + 4)));
  {
    PadicNum lam = padic_log(PadicNum(p, Int(1 + p), work_ + 6));
    std::vector<PadicNum> Lx(nmom_, PadicNum::zero(p, work_ + 4));
    PadicNum om = teichmuller(Int(mod_pos(Int(g.a), p)), p, work_ + 6);
    Lx[0] = padic_log(exact(g.a) * om.inverse()) / lam;
    PadicNum ca = exact(g.c) * exact(g.a).inverse();
    PadicNum pw = ca;
    for (long s = 1; s < nmom_; ++s) {
      PadicNum cs = pw / PadicNum::exact_int(p, s);
      if (s % 2 == 0) cs = -cs;
      Lx[s] = cs / lam;
      pw = (pw * ca).truncate_abs(work_ + 6);
    }
    C[0][0] = PadicNum::exact_int(p, 1);
    std::vector<PadicNum> cur = C[0];
    for (long n = 1; n < M; ++n) {
      // cur <- cur * (Lambda - (n-1)) / n
      std::vector<PadicNum> nxt(nmom_, PadicNum::zero(p, work_ + 4));
      for (long s = 0; s < nmom_; ++s) {
        if (cur[s].is_zero() && cur[s].abs_prec() >= work_) continue;
        for (long t = 0; s + t < nmom_; ++t) nxt[s + t] += cur[s] * Lx[t];
      }
      PadicNum nm1 = PadicNum::exact_int(p, n - 1);
      PadicNum ninv = PadicNum::exact_int(p, n).inverse();
      for (long s = 0; s < nmom_; ++s) nxt[s] = (nxt[s] - nm1 * cur[s]) * ninv;
      C[n] = nxt;
      cur = std::move(nxt);
    }
  }

  // assemble rows[j][i] as family elements: sum over splits of the column
  T.rows.assign(nmom_, std::vector<FamilyRing::Elt>(nmom_, R_.zero()));
  for (long j = 0; j < nmom_; ++j) {
    for (long n = 0; n < M; ++n) {
      // x-series product base[j] * C[n]
      for (long s = 0; s < nmom_; ++s) {
        const PadicNum& bs = base[j][s];
        if (bs.is_zero() && bs.abs_prec() >= work_) continue;
        for (long t = 0; s + t < nmom_; ++t) {
          const PadicNum& ct = C[n][t];
          if (ct.is_zero() && ct.abs_prec() >= work_) continue;
          T.rows[j][s + t][n] += bs * ct;
        }
      }
    }
  }

  std::scoped_lock lk(mu_);
  return cache_.emplace(g, std::move(T)).first->second;
}

FamilyDistModule::Value FamilyDistModule::act(const Value& x, const Mat22& g) const {
  const Table& T = table(g);
  long M = R_.wdeg();
  long k0 = R_.k0();
  Value r = zero();
  // conservative loss in the dropped x-tail per w-degree (the family
  // factor coefficients need not gain a full power of p per index)
  long logp = 0;
  for (long q = R_.p(); q <= nmom_; q *= R_.p()) ++logp;
  for (long j = 0; j < nmom_; ++j) {
    FamilyRing::Elt acc = R_.zero();
    for (long i = 0; i < nmom_; ++i) {
      const auto& cf = T.rows[j][i];
      bool allz = true;
      for (const auto& c : cf)
        if (!(c.is_zero() && c.abs_prec() >= work_)) { allz = false; break; }
      if (allz) continue;
      for (long n = 0; n < M; ++n) {
        for (long t = 0; n + t < M; ++t) acc[n + t] += cf[n] * x[i][t];
      }
    }
    if (j > k0) {
      long base_tail = T.uniform_tail ? nmom_ : std::max<long>(nmom_ - j, 0);
      for (long n = 0; n < M; ++n) {
        long tail = std::max<long>(base_tail - n * (1 + logp), 0);
        acc[n] = acc[n].truncate_abs(tail);
      }
    }
    r[j] = acc;
  }
  return r;
}

long FamilyDistModule::fil_level(const Value& x) const {
  long lvl = nmom_;
  for (long j = 0; j < nmom_; ++j)
    for (long n = 0; n < R_.wdeg(); ++n) {
      const PadicNum& c = x[j][n];
      long vb = c.is_zero() ? c.abs_prec() : c.valuation();
      lvl = std::min(lvl, vb + j);
    }
  return lvl;
}

DistModule::Value FamilyDistModule::component(const Value& x, long n) const {
  DistModule::Value out;
  out.reserve(nmom_);
  for (long j = 0; j < nmom_; ++j) out.push_back(x[j][n]);
  return out;
}

// ---------------------------------------------------------------------
// family lift

namespace {

// classical block of a distribution symbol as a coordinate vector mod p^e
std::vector<Int> classical_coords(const DistModule& D, const ModularSymbol<DistModule>& phi, long e) {
  long k = D.weight();
  std::vector<Int> out;
  Int mod = pow_int(D.prime(), static_cast<unsigned long>(e));
  for (const auto& v : phi.values)
    for (long j = 0; j <= k; ++j) {
      PadicNum x = v[j].truncate_abs(e);
      out.push_back(x.is_zero() ? Int(0) : x.residue(e));
    }
  return out;
}

// matrix of (U_p - alpha) on the classical block mod p^e
std::vector<std::vector<Int>> up_minus_alpha_matrix(const ManinBasis& B, long p, long k,
                                                    const PadicNum& alpha, long e) {
  RatPolyModule MQ(k);
  HeckeOp Up = make_up(B, p);
  long d = k + 1;
  long dim = B.ncosets() * d;
  Int mod = pow_int(p, static_cast<unsigned long>(e));
  std::vector<std::vector<Int>> A(dim, std::vector<Int>(dim, 0));
  for (long i = 0; i < B.ncosets(); ++i) {
    for (const auto& t : Up.terms()[i]) {
      const auto& T = MQ.table(t.twist);
      for (long j = 0; j < d; ++j)
        for (long s = 0; s < d; ++s) {
          if (T[j][s] == 0) continue;
          Int& cell = A[i * d + j][t.coset * d + s];
          cell = mod_pos(cell + Int(t.sign) * T[j][s], mod);
        }
    }
  }
  Int am = alpha.residue(e);
  for (long r = 0; r < dim; ++r) A[r][r] = mod_pos(A[r][r] - am, mod);
  return A;
}

}  // namespace

FamilyLiftResult family_lift(const FamilyRing& R, const FamilyDistModule& FD, const DistModule& D,
                             const ManinBasis& BNp, const RefinedEigenData& f,
                             const ControlLiftResult& lift, long N) {
  FamilyLiftResult res;
  if (f.slope != Rat(0)) {
    res.refusal = "family lifting requires an ordinary (slope 0) refinement";
    return res;
  }
  long p = R.p();
  long k0 = R.k0();
  long M = R.wdeg();

  HeckeOp Up = make_up(BNp, p);

  // degree-0 data
  res.symbol.basis = &BNp;
  res.symbol.values.assign(BNp.ncosets(), FD.zero());
  for (long i = 0; i < BNp.ncosets(); ++i)
    for (long j = 0; j < FD.nmoments(); ++j) res.symbol.values[i][j][0] = lift.symbol.values[i][j];
  res.alpha = R.from_padic(f.alpha);
  res.eigen_defect.assign(M, lift.eigen_defect);

  long d = k0 + 1;
  auto classical_absprec = [&](const ModularSymbol<DistModule>& S) {
    long e = D.work_prec();
    for (const auto& v : S.values)
      for (long j = 0; j <= k0; ++j) e = std::min(e, v[j].abs_prec());
    return e;
  };

  for (long n = 1; n < M; ++n) {
    // residual R_n = w^n coefficient of (U Phi - alpha Phi) for the current
    // partial data
    auto UPhi = Up.apply(FD, res.symbol, true);
    auto aPhi = res.symbol;
    for (auto& v : aPhi.values) v = FD.scale(v, res.alpha);
    ModularSymbol<DistModule> Rn;
    Rn.basis = &BNp;
    Rn.values.reserve(BNp.ncosets());
    for (long i = 0; i < BNp.ncosets(); ++i)
      Rn.values.push_back(FD.component(FD.sub(UPhi.values[i], aPhi.values[i]), n));

    // solve at the honest precision of the residual's classical block
    long e = std::min({classical_absprec(Rn), classical_absprec(lift.symbol), D.work_prec() - 2});
    if (e < 2) {
      res.refusal = "degree " + std::to_string(n) + ": residual precision exhausted";
      return res;
    }
    Int mod = pow_int(p, static_cast<unsigned long>(e));
    auto A = up_minus_alpha_matrix(BNp, p, k0, f.alpha, e);
    ZpeSolver solver(A, p, e);
    std::vector<std::vector<Int>> At(A[0].size(), std::vector<Int>(A.size(), 0));
    for (size_t r = 0; r < A.size(); ++r)
      for (size_t c = 0; c < A[r].size(); ++c) At[c][r] = A[r][c];
    ZpeSolver tsolver(At, p, e);
    if (tsolver.kernel().empty()) {
      res.refusal = "no left null vector for (U_p - alpha) on the classical block";
      return res;
    }
    std::vector<Int> phi0_cl = classical_coords(D, lift.symbol, e);
    std::vector<Int> lvec;
    Int denom = 0;
    for (const auto& cand : tsolver.kernel()) {
      Int dv = 0;
      for (size_t t = 0; t < cand.size(); ++t) dv = mod_pos(dv + cand[t] * phi0_cl[t], mod);
      if (denom == 0 || (dv != 0 && val_p(dv, p) < val_p(denom, p))) {
        lvec = cand;
        denom = dv;
      }
      if (denom != 0 && val_p(denom, p) == 0) break;
    }
    if (denom == 0) {
      res.refusal = "degenerate pairing of the left null vector with the eigensymbol";
      return res;
    }
    long vden = val_p(denom, p);
    Int den_unit_inv = inv_mod(denom / pow_int(p, static_cast<unsigned long>(vden)), mod);

    long gauge = -1;
    for (size_t t = 0; t < phi0_cl.size(); ++t)
      if (phi0_cl[t] % p != 0) { gauge = static_cast<long>(t); break; }

    // alpha^{(n)} = <l, R_n^cl> / <l, phi0^cl>
    std::vector<Int> rn_cl = classical_coords(D, Rn, e);
    Int num = 0;
    for (size_t t = 0; t < lvec.size(); ++t) num = mod_pos(num + lvec[t] * rn_cl[t], mod);
    PadicNum alpha_n = PadicNum(p, num, e) * PadicNum(p, den_unit_inv, e);
    if (vden > 0)
      alpha_n = alpha_n / PadicNum(p, pow_int(p, static_cast<unsigned long>(vden)), PadicNum::PREC_EXACT);

    // B = alpha_n Phi0 - R_n; solve (U - alpha) X = B
    ModularSymbol<DistModule> Bsym;
    Bsym.basis = &BNp;
    Bsym.values.reserve(BNp.ncosets());
    for (long i = 0; i < BNp.ncosets(); ++i)
      Bsym.values.push_back(D.sub(D.scale(lift.symbol.values[i], alpha_n), Rn.values[i]));

    // Classical particular solution. Solutions can carry bounded p-power
    // denominators when a congruent eigensystem shares the residual
    // eigenvalue (here: Delta = f_11a mod 11), so scale B by p^t until the
    // integral system is solvable and divide back.
    std::vector<Int> b_cl = classical_coords(D, Bsym, e);
    std::optional<std::vector<Int>> x_cl;
    long denom_pow = 0;
    for (long t = 0; t <= 6 && !x_cl; ++t) {
      std::vector<Int> bt(b_cl);
      Int pt = pow_int(p, static_cast<unsigned long>(t));
      for (auto& x : bt) x = mod_pos(x * pt, mod);
      x_cl = solver.solve(bt);
      denom_pow = t;
    }
    if (!x_cl) {
      res.refusal = "degree " + std::to_string(n) + ": classical block not solvable";
      return res;
    }
    res.denom_bound = std::max(res.denom_bound, denom_pow);
    // gauge: remove the phi0 component so that x[gauge] = 0
    if (gauge >= 0 && (*x_cl)[gauge] != 0) {
      Int t = mul_mod((*x_cl)[gauge], inv_mod(phi0_cl[gauge], mod), mod);
      for (size_t s = 0; s < x_cl->size(); ++s)
        (*x_cl)[s] = mod_pos((*x_cl)[s] - t * phi0_cl[s], mod);
    }

    // distribution solution: X <- (U X - B)/alpha with the classical block
    // frozen; converges on ker(rho) as in the control lift
    ModularSymbol<DistModule> X;
    X.basis = &BNp;
    X.values.assign(BNp.ncosets(), D.zero());
    PadicNum pdenom_inv =
        PadicNum::exact_int(p, pow_int(p, static_cast<unsigned long>(denom_pow))).inverse();
    auto freeze_classical = [&](ModularSymbol<DistModule>& S) {
      for (long i = 0; i < BNp.ncosets(); ++i)
        for (long j = 0; j < d; ++j)
          S.values[i][j] = PadicNum(p, (*x_cl)[i * d + j], e) * pdenom_inv;
    };
    freeze_classical(X);
    PadicNum alpha_inv = f.alpha.inverse();
    long budget = D.nmoments() + 2;
    for (long it = 0; it < budget; ++it) {
      auto UX = Up.apply(D, X, true);
      ModularSymbol<DistModule> nxt;
      nxt.basis = &BNp;
      nxt.values.reserve(BNp.ncosets());
      for (long i = 0; i < BNp.ncosets(); ++i)
        nxt.values.push_back(D.scale(D.sub(UX.values[i], Bsym.values[i]), alpha_inv));
      freeze_classical(nxt);
      X = std::move(nxt);
    }

    for (long i = 0; i < BNp.ncosets(); ++i)
      for (long j = 0; j < FD.nmoments(); ++j) res.symbol.values[i][j][n] = X.values[i][j];
    res.alpha[n] = alpha_n;
  }

  // measure the eigen defect per degree
  {
    auto UPhi = Up.apply(FD, res.symbol, true);
    auto aPhi = res.symbol;
    for (auto& v : aPhi.values) v = FD.scale(v, res.alpha);
    for (long n = 0; n < M; ++n) {
      long lvl = PadicNum::PREC_EXACT;
      for (long i = 0; i < BNp.ncosets(); ++i) {
        auto diff = FD.component(FD.sub(UPhi.values[i], aPhi.values[i]), n);
        lvl = std::min(lvl, D.fil_level(diff));
      }
      res.eigen_defect[n] = lvl;
    }
  }
  res.converged = true;
  for (long n = 0; n < M; ++n) res.converged = res.converged && res.eigen_defect[n] >= std::min<long>(N, D.nmoments());
  return res;
}

FamilySpecialization family_specialize(const FamilyRing& R, const FamilyDistModule& FD,
                                       const DistModule& Dk, const ManinBasis& BNp,
                                       const FamilyLiftResult& fam, long kprime,
                                       const std::vector<long>& hecke_ells) {
  FamilySpecialization out;
  out.kprime = kprime;
  out.w0 = R.classical_point(kprime);
  long w0v = out.w0.is_zero() ? out.w0.abs_prec() : out.w0.valuation();
  out.precision = R.wdeg() * w0v;

  out.symbol.basis = &BNp;
  out.symbol.values.reserve(BNp.ncosets());
  for (long i = 0; i < BNp.ncosets(); ++i) {
    DistModule::Value v;
    v.reserve(FD.nmoments());
    for (long j = 0; j < FD.nmoments(); ++j) v.push_back(R.at(fam.symbol.values[i][j], out.w0));
    out.symbol.values.push_back(std::move(v));
  }

  // report Hecke eigenvalues of the specialisation: ratio on the first
  // coordinate where the symbol has a unit, then verified globally
  for (long ell : hecke_ells) {
    if (BNp.level() % ell == 0) continue;
    HeckeOp T = make_tell(BNp, ell);
    auto Tphi = T.apply(Dk, out.symbol, true);
    PadicNum ratio;
    bool have = false;
    for (long i = 0; i < BNp.ncosets() && !have; ++i)
      for (long j = 0; j < Dk.nmoments() && !have; ++j) {
        const PadicNum& x = out.symbol.values[i][j];
        if (!x.is_zero() && x.valuation() == 0) {
          ratio = Tphi.values[i][j] / x;
          have = true;
        }
      }
    if (have) out.hecke[ell] = ratio;
  }
  return out;
}

FamilyBranched family_lp(const FamilyRing& R, const FamilyDistModule& FD, const FamilyLiftResult& fam,
                         long c) {
  long p = R.p();
  long pc = 1;
  for (long i = 0; i < c; ++i) pc *= p;
  FamilyBranched L;
  L.p = p;
  L.depth = c;
  L.nmom = FD.nmoments();
  FamilyRing::Elt alpha_inv_c = R.one();
  {
    FamilyRing::Elt ai = R.inverse(fam.alpha);
    for (long i = 0; i < c; ++i) alpha_inv_c = R.mul(alpha_inv_c, ai);
  }
  for (long a = 1; a < pc; ++a) {
    if (a % p == 0) continue;
    auto terms = fam.symbol.basis->path_to_inf(Int(a), Int(pc));
    auto V = eval_terms(FD, fam.symbol, terms);
    std::vector<FamilyRing::Elt> ms(FD.nmoments(), R.zero());
    PadicNum scale = PadicNum::exact_int(p, 1);
    PadicNum pcn = PadicNum::exact_int(p, pc);
    for (long j = 0; j < FD.nmoments(); ++j) {
      ms[j] = R.mul(R.scale(V[j], scale), alpha_inv_c);
      scale = scale * pcn;
    }
    L.branches[a] = std::move(ms);
  }
  return L;
}

BranchedDistribution FamilyBranched::specialize(const FamilyRing& R, const PadicNum& w0) const {
  BranchedDistribution out;
  out.p = p;
  out.depth = depth;
  out.nmom = nmom;
  out.alpha_power = depth;
  for (const auto& [a, ms] : branches) {
    std::vector<PadicNum> v;
    v.reserve(ms.size());
    for (const auto& m : ms) v.push_back(R.at(m, w0));
    out.branches[a] = std::move(v);
  }
  return out;
}

}  // namespace ovc
