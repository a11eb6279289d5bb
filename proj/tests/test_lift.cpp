#include "doctest.h"

#include "overconv/lift.hpp"

using namespace ovc;

TEST_CASE("stabilised symbol is a U_p eigensymbol (11a1, p=3)") {
  EigenData f = builtin_eigendata("11a1", 20);
  RefinedEigenData ref = small_slope_refinement(f, 3, 12);
  CHECK(ref.slope == Rat(0));

  ManinBasis BN(11), BNp(33);
  EigenDataView v{11, 0, [f](long ell) { return f.a(ell); }};
  auto eig = eigen_solve(BN, v, +1);
  PadicPolyModule M(3, 0, 12);
  auto phi_a = stabilise_symbol(M, BNp, BN, eig.symbol, ref);

  HeckeOp Up = make_up(BNp, 3);
  auto Uphi = Up.apply(M, phi_a, false);
  long worst = PadicNum::PREC_EXACT;
  for (long i = 0; i < BNp.ncosets(); ++i) {
    auto diff = M.sub(Uphi.values[i], M.scale(phi_a.values[i], ref.alpha));
    worst = std::min(worst, M.defect_valuation(diff));
  }
  CHECK(worst >= 10);

  // relations still hold
  CHECK(check_relations_valuation(M, phi_a) >= 10);
}

TEST_CASE("control lift for 11a1 at p=3, N=8") {
  EigenData f = builtin_eigendata("11a1", 20);
  auto P = run_lift_pipeline(f, 3, 8, +1);
  REQUIRE(P.lift.refusal.empty());
  CHECK(P.lift.converged);
  CHECK(P.lift.achieved_N >= 8);
  CHECK(P.lift.eigen_defect >= 8);
  CHECK(P.lift.relation_defect >= 8);

  // specialisation returns the stabilised classical symbol bit-exactly at
  // the classical precisions
  const DistModule& D = *P.D;
  PadicPolyModule M(3, 0, D.work_prec());
  for (long i = 0; i < P.basis_np().ncosets(); ++i) {
    auto sp = specialize(D, P.lift.symbol.values[i]);
    auto diff = M.sub(sp, P.stabilised.values[i]);
    CHECK(M.defect_valuation(diff) >= P.lift.achieved_N);
  }
}

TEST_CASE("two naive lifts converge to the same symbol") {
  EigenData f = builtin_eigendata("11a1", 20);
  std::mt19937_64 rng1(11), rng2(999331);
  auto P1 = run_lift_pipeline(f, 3, 6, +1, &rng1);
  auto P2 = run_lift_pipeline(f, 3, 6, +1, &rng2);
  REQUIRE(P1.lift.converged);
  REQUIRE(P2.lift.converged);
  const DistModule& D = *P1.D;
  long N = std::min(P1.lift.achieved_N, P2.lift.achieved_N);
  CHECK(N >= 6);
  for (long i = 0; i < P1.basis_np().ncosets(); ++i) {
    auto diff = D.sub(P1.lift.symbol.values[i], P2.lift.symbol.values[i]);
    CHECK(D.fil_level(diff) >= N);
  }
}

TEST_CASE("slope refusal: beta-refinement of 11a1 at p=3 has slope 1 = k+1") {
  EigenData f = builtin_eigendata("11a1", 20);
  auto refs = stabilize(f, 3, 10);
  REQUIRE(refs.size() == 2);
  const RefinedEigenData& beta = refs[1];
  CHECK(beta.slope == Rat(1));

  ManinBasis BN(11), BNp(33);
  EigenDataView v{11, 0, [f](long ell) { return f.a(ell); }};
  auto eig = eigen_solve(BN, v, +1);
  DistModule D(3, 0, 8);
  PadicPolyModule M(3, 0, D.work_prec());
  auto phi_b = stabilise_symbol(M, BNp, BN, eig.symbol, beta);
  auto r = control_lift(D, BNp, phi_b, beta, 6);
  CHECK(!r.refusal.empty());
  auto rep = noncriticality_report(r, 0);
  CHECK(rep.refused);
  CHECK(rep.bound == 1);
}

TEST_CASE("Hecke compatibility of the lift without being enforced") {
  EigenData f = builtin_eigendata("11a1", 20);
  auto P = run_lift_pipeline(f, 3, 6, +1);
  const DistModule& D = *P.D;
  for (long ell : {2L, 5L}) {
    HeckeOp T = make_tell(P.basis_np(), ell);
    auto Tphi = T.apply(D, P.lift.symbol, true);
    PadicNum aell(3, f.a(ell), D.work_prec());
    long worst = PadicNum::PREC_EXACT;
    for (long i = 0; i < P.basis_np().ncosets(); ++i) {
      auto diff = D.sub(Tphi.values[i], D.scale(P.lift.symbol.values[i], aell));
      worst = std::min(worst, D.fil_level(diff));
    }
    CHECK(worst >= P.lift.achieved_N);
  }
}

TEST_CASE("control lift for Delta at p=11, N=6 (weight 10)") {
  EigenData d = delta_eigendata(20);
  auto P = run_lift_pipeline(d, 11, 6, +1);
  REQUIRE(P.lift.refusal.empty());
  CHECK(P.lift.converged);
  CHECK(P.lift.achieved_N >= 6);
  CHECK(P.lift.eigen_defect >= 6);
  // slope 0: tau(11) = 534612 = 1 mod 11
  CHECK(P.refined.slope == Rat(0));
}
