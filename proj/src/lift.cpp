#include "overconv/lift.hpp"

#include <memory>

namespace ovc {

ModularSymbol<PadicPolyModule> stabilise_symbol(const PadicPolyModule& M, const ManinBasis& BNp,
                                                const ManinBasis& BN,
                                                const ModularSymbol<RatPolyModule>& phi,
                                                const RefinedEigenData& f) {
  long p = f.p;
  RatPolyModule MQ(f.base.k);
  ModularSymbol<PadicPolyModule> out;
  out.basis = &BNp;
  out.values.reserve(BNp.ncosets());

  if (f.p_divides_level) {
    if (&BNp != &BN) throw std::logic_error("stabilise_symbol: p | N but bases differ");
    for (long i = 0; i < BNp.ncosets(); ++i) out.values.push_back(M.from_rat(phi.values[i]));
    return out;
  }

  Mat22 Wp{p, 0, 0, 1};
  PadicNum alpha_inv = f.alpha.inverse();
  for (long i = 0; i < BNp.ncosets(); ++i) {
    Mat22 g = BNp.rep(i);
    // phi(D_g) evaluated through the level-N basis
    auto t1 = BN.path(Rat(Int(g.b), Int(g.d == 0 ? 1 : g.d)), g.d == 0,
                      Rat(Int(g.a), Int(g.c == 0 ? 1 : g.c)), g.c == 0);
    auto v1 = eval_terms(MQ, phi, t1);
    // phi(W_p D_g)|W_p
    Mat22 m = Wp * g;
    auto t2 = BN.path(Rat(Int(m.b), Int(m.d == 0 ? 1 : m.d)), m.d == 0,
                      Rat(Int(m.a), Int(m.c == 0 ? 1 : m.c)), m.c == 0);
    auto v2 = MQ.act(eval_terms(MQ, phi, t2), Wp);
    out.values.push_back(M.sub(M.from_rat(v1), M.scale(M.from_rat(v2), alpha_inv)));
  }
  return out;
}

ModularSymbol<DistModule> naive_lift(const DistModule& D, const ModularSymbol<PadicPolyModule>& phi,
                                     std::mt19937_64* rng) {
  ModularSymbol<DistModule> out;
  out.basis = phi.basis;
  out.values.assign(phi.basis->ncosets(), D.zero());
  long k = D.weight();
  for (long i = 0; i < phi.basis->ncosets(); ++i) {
    auto& mv = out.values[i];
    for (long j = 0; j < D.nmoments(); ++j) {
      if (j <= k) {
        mv[j] = phi.values[i][j];
      } else if (rng) {
        mv[j] = PadicNum(D.prime(), Int((*rng)() % 1000003), D.work_prec());
      } else {
        mv[j] = PadicNum::zero(D.prime(), 0);  // integral but unknown
      }
    }
  }
  return out;
}

ControlLiftResult control_lift(const DistModule& D, const ManinBasis& BNp,
                               const ModularSymbol<PadicPolyModule>& phi_alpha,
                               const RefinedEigenData& f, long N, std::mt19937_64* rng) {
  ControlLiftResult res;
  res.requested_N = N;
  res.slope = f.slope;
  long k = f.base.k;
  if (f.slope >= Rat(k + 1)) {
    res.refusal = "slope " + std::to_string(static_cast<long>(numerator(f.slope))) +
                  " is not small (bound k+1 = " + std::to_string(k + 1) + ")";
    return res;
  }
  long h = static_cast<long>(numerator(f.slope));  // integral slopes only here

  HeckeOp Up = make_up(BNp, f.p);
  ModularSymbol<DistModule> Phi = naive_lift(D, phi_alpha, rng);
  PadicNum alpha_inv = f.alpha.inverse();

  long budget = N + (h > 0 ? h * N : 0) + 2;
  long last_level = -1;
  for (long it = 0; it < budget; ++it) {
    ModularSymbol<DistModule> next = Up.apply(D, Phi, true);
    for (auto& v : next.values) v = D.scale(v, alpha_inv);
    ++res.iterations;
    // stability of successive iterates, measured in the filtration
    long lvl = PadicNum::PREC_EXACT;
    for (long i = 0; i < BNp.ncosets(); ++i)
      lvl = std::min(lvl, D.fil_level(D.sub(next.values[i], Phi.values[i])));
    Phi = std::move(next);
    if (lvl == last_level && lvl >= std::min<long>(N, D.nmoments())) break;
    last_level = lvl;
  }

  // honest eigen defect of the returned symbol
  {
    ModularSymbol<DistModule> UPhi = Up.apply(D, Phi, true);
    long lvl = PadicNum::PREC_EXACT;
    for (long i = 0; i < BNp.ncosets(); ++i) {
      auto diff = D.sub(UPhi.values[i], D.scale(Phi.values[i], f.alpha));
      lvl = std::min(lvl, D.fil_level(diff));
    }
    res.eigen_defect = lvl;
  }
  res.relation_defect = check_relations_valuation(D, Phi);
  res.achieved_N = std::min({res.eigen_defect, res.relation_defect, D.nmoments()});
  res.converged = res.achieved_N >= std::min<long>(N, D.nmoments());
  // moments keep their per-moment interval precision (the classical block
  // is exact to working precision); achieved_N is the uniform Fil level
  res.symbol = std::move(Phi);
  return res;
}

NonCriticalityReport noncriticality_report(const ControlLiftResult& r, long k) {
  NonCriticalityReport rep;
  rep.slope = r.slope;
  rep.bound = k + 1;
  rep.refused = !r.refusal.empty();
  rep.converged = r.converged;
  rep.achieved = r.achieved_N;
  rep.eigen_defect = r.eigen_defect;
  return rep;
}

LiftPipeline run_lift_pipeline(const EigenData& f, long p, long N, int sign, std::mt19937_64* rng,
                               long nmom_min) {
  LiftPipeline P;
  P.sign = sign;
  P.refined = small_slope_refinement(f, p, N + f.k + 4);
  P.BN = std::make_unique<ManinBasis>(f.level);
  const ManinBasis* bnp = P.BN.get();
  if (!P.refined.p_divides_level) {
    P.BNp = std::make_unique<ManinBasis>(f.level * p);
    bnp = P.BNp.get();
  }

  EigenDataView view;
  view.level = f.level;
  view.k = f.k;
  view.a = [f](long ell) { return f.a(ell); };
  auto eig = eigen_solve(*P.BN, view, sign);
  P.classical = std::move(eig.symbol);

  long h = static_cast<long>(numerator(P.refined.slope));
  long budget = N + (h > 0 ? h * N : 0) + 2;
  long nmom = std::max<long>(N, f.k + 1) + (h > 0 ? h * budget : 0) + 2;
  nmom = std::max(nmom, nmom_min);
  P.D = std::make_unique<DistModule>(p, f.k, nmom);

  PadicPolyModule M(p, f.k, P.D->work_prec());
  P.stabilised = stabilise_symbol(M, *bnp, *P.BN, P.classical, P.refined);
  P.lift = control_lift(*P.D, *bnp, P.stabilised, P.refined, N, rng);
  return P;
}

}  // namespace ovc
