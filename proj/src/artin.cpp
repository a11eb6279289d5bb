#include "overconv/artin.hpp"

#include <sstream>

namespace ovc {

PadicNum ProductDistribution::evaluate(const PadicCharacter& chi) const {
  return evaluate_character(first, chi) * evaluate_character(second, chi);
}

CycloElt ProductDistribution::evaluate_cyclo(const PadicCharacter& chi, const CycloField& F) const {
  return evaluate_character_cyclo(first, chi, F) * evaluate_character_cyclo(second, chi, F);
}

MellinSeries ProductDistribution::mellin_product(long omega_power, long T_prec) const {
  MellinSeries out;
  out.branch = omega_power;
  out.coeffs.assign(T_prec, PadicNum::zero(first.p, PadicNum::PREC_EXACT));
  // the omega^i branch of a product is the convolution over i1 + i2 = i
  long pm1 = first.p - 1;
  for (long i1 = 0; i1 < pm1; ++i1) {
    long i2 = ((omega_power - i1) % pm1 + pm1) % pm1;
    MellinSeries a = mellin(first, i1, T_prec);
    MellinSeries b = mellin(second, i2, T_prec);
    for (long n = 0; n < T_prec; ++n)
      for (long t = 0; t + n < T_prec; ++t) out.coeffs[n + t] += a.coeffs[n] * b.coeffs[t];
  }
  return out;
}

ProductDistribution lp_product(const BranchedDistribution& L1, const BranchedDistribution& L2) {
  if (L1.p != L2.p) throw std::domain_error("lp_product: different primes");
  if (L1.depth != L2.depth)
    throw std::domain_error("lp_product: depth mismatch; rebuild one factor at depth " +
                            std::to_string(std::max(L1.depth, L2.depth)));
  ProductDistribution P;
  P.first = L1;
  P.second = L2;
  P.slope = L1.slope + L2.slope;
  return P;
}

ArtinValueReport artin_value_check(const EigenData& f, long D, long p,
                                   const std::vector<PadicCharacter>& characters, long N, long slack) {
  ArtinValueReport rep;
  rep.label = f.label;
  rep.D = D;
  rep.p = p;

  long absD = D < 0 ? -D : D;
  if (absD % p == 0 || f.level % p == 0) {
    rep.refused = true;
    rep.refusal = "p divides D or the level";
    return rep;
  }
  EigenData g;
  try {
    g = twist(f, D);
  } catch (const std::domain_error& e) {
    rep.refused = true;
    rep.refusal = e.what();
    return rep;
  }

  // pipelines per sign, built on demand
  std::map<int, LiftPipeline> Pf, Pg;
  auto pipeline = [&](std::map<int, LiftPipeline>& cache, const EigenData& form,
                      int sign) -> LiftPipeline& {
    auto it = cache.find(sign);
    if (it == cache.end()) {
      LiftPipeline P = run_lift_pipeline(form, p, N, sign);
      if (!P.lift.refusal.empty())
        throw std::domain_error("small-slope failure for " + form.label + ": " + P.lift.refusal);
      it = cache.emplace(sign, std::move(P)).first;
    }
    return it->second;
  };

  RatPolyModule MQ(f.k);
  try {
    for (const auto& chi : characters) {
      int eps = chi.is_even() ? +1 : -1;
      LiftPipeline& F = pipeline(Pf, f, eps);
      LiftPipeline& G = pipeline(Pg, g, eps);
      long depth = std::max<long>(chi.finite.m(), 1);
      auto Lf = build_lp(F.refined, *F.D, F.lift.symbol, depth);
      auto Lg = build_lp(G.refined, *G.D, G.lift.symbol, depth);
      long achieved = std::min(F.lift.achieved_N, G.lift.achieved_N);
      rep.achieved = rep.achieved == 0 ? achieved : std::min(rep.achieved, achieved);

      ArtinValueEntry e;
      e.conductor_m = chi.finite.m();
      e.tame_exp = chi.finite.tame_exp();
      e.wild_exp = chi.finite.wild_exp();
      e.j = chi.j;
      long prec = F.D->work_prec();
      if (chi.finite.is_tame()) {
        PadicNum lhs = evaluate_character(Lf, chi) * evaluate_character(Lg, chi);
        PadicNum rhs = interpolation_factor(F.refined, chi, prec) *
                       interpolation_factor(G.refined, chi, prec) *
                       ev_classical_padic(MQ, F.classical, chi, p, prec) *
                       ev_classical_padic(MQ, G.classical, chi, p, prec);
        PadicNum diff = lhs - rhs;
        e.lhs = lhs.str();
        e.rhs = rhs.str();
        e.defect_valuation = diff.is_zero() ? diff.abs_prec() : diff.valuation();
      } else {
        CycloField Fld(p, chi.finite.m() - 1, prec);
        CycloElt lhs = evaluate_character_cyclo(Lf, chi, Fld) * evaluate_character_cyclo(Lg, chi, Fld);
        PadicNum facs = interpolation_factor(F.refined, chi, prec) *
                        interpolation_factor(G.refined, chi, prec);
        CycloElt rhs = (ev_classical_cyclo(MQ, F.classical, chi, Fld, prec) *
                        ev_classical_cyclo(MQ, G.classical, chi, Fld, prec))
                           .scaled(facs);
        e.lhs = lhs.str();
        e.rhs = rhs.str();
        e.defect_valuation = (lhs - rhs).valuation_lower_bound();
      }
      e.pass = e.defect_valuation >= achieved - slack;
      rep.entries.push_back(std::move(e));
    }
  } catch (const std::domain_error& err) {
    rep.refused = true;
    rep.refusal = err.what();
  }
  return rep;
}

GaussCompatReport gauss_compat_check(const FiniteCharacter& chi, long D, long prec) {
  GaussCompatReport rep;
  rep.p = chi.p();
  rep.m = chi.m();
  rep.D = D;
  long p = chi.p();
  int m = chi.m();
  long pm = chi.modulus();
  long q = D < 0 ? -D : D;
  if (q % p == 0) throw std::domain_error("gauss_compat_check: p | D");

  CycloField F(p, std::max(m, 1), prec);

  // baseline: tau(chi) tau(chibar) = chi(-1) p^m
  CycloElt t = gauss_sum(chi, F, prec);
  CycloElt tb = gauss_sum(chi.bar(), F, prec);
  CycloElt base = t * tb - F.from_padic(PadicNum::exact_int(p, Int(chi.is_odd() ? -1 : 1) * pm));
  rep.baseline_pass = base.valuation_lower_bound() >= prec - 2;

  if (q == 1) {
    // chi_1 is trivial: the relation degenerates to tau(chi) = tau(chi)
    rep.relation_pass = true;
    rep.lhs = rep.rhs = t.str();
    return rep;
  }
  if ((p - 1) % q != 0)
    throw std::domain_error("gauss_compat_check: |D| must divide p-1 so zeta_|D| lies in Z_p");

  // zeta_q in Z_p: Teichmuller lift of a residue of exact order q
  long r = primitive_root(p, 1);
  PadicNum zq = teichmuller(pow_mod(r, (p - 1) / q, p), p, prec);
  auto zq_pow = [&](long e) {
    e %= q;
    if (e < 0) e += q;
    return zq.pow(e);
  };
  auto chiD = [&](long n) { return kronecker(Int(D), Int(n)); };

  // tau(chi_D) with respect to zeta_q
  PadicNum tauD = PadicNum::zero(p, prec);
  for (long a = 1; a < q; ++a) {
    int s = chiD(a);
    if (s == 0) continue;
    PadicNum term = zq_pow(a);
    tauD += (s > 0) ? term : -term;
  }

  // tau(chi chi_D) over (Z/p^m q)^*, additive character by CRT:
  // zeta_Q^a = X^{a qbar mod p^m} zeta_q^{a pbar mod q}
  long Q = pm * q;
  long qbar = static_cast<long>(inv_mod(q, pm));
  long pbar = static_cast<long>(inv_mod(pm, q));
  CycloElt lhs = F.zero();
  for (long a = 1; a < Q; ++a) {
    if (gcd_l(a, Q) != 1) continue;
    int s = chiD(a);
    if (s == 0) continue;
    CycloElt w = chi.value(a, F, prec);
    PadicNum zpart = zq_pow(a % q * pbar);
    CycloElt term = (w * F.root_power((a % pm) * qbar % pm)).scaled(s > 0 ? zpart : -zpart);
    lhs = lhs + term;
  }
  // rhs = chi(q) chi_D(p^m) tau(chi) tau(chi_D)
  CycloElt rhs = (chi.value(q, F, prec) * t).scaled(tauD);
  long sD = 1;
  for (int i = 0; i < m; ++i) sD *= chiD(p);
  if (sD < 0) rhs = -rhs;
  rep.lhs = lhs.str();
  rep.rhs = rhs.str();
  rep.relation_pass = (lhs - rhs).valuation_lower_bound() >= prec - 2;
  return rep;
}

}  // namespace ovc
