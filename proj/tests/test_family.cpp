#include "doctest.h"

#include "overconv/family.hpp"

using namespace ovc;

TEST_CASE("universal character: specialisation and multiplicativity") {
  FamilyRing R(11, 10, 3, 12);
  // w = 0 specialisation is z^{k0}
  PadicNum z(11, Int(7), 12);
  auto kz = R.universal_character(z);
  CHECK((kz[0] - z.pow(10)).is_zero());
  // z = 1 -> 1
  auto k1 = R.universal_character(PadicNum::exact_int(11, 1).truncate_abs(12));
  CHECK((k1[0] - PadicNum::exact_int(11, 1)).is_zero());
  for (long n = 1; n < 3; ++n) CHECK(k1[n].is_zero());
  // multiplicativity kappa(zw) = kappa(z) kappa(w)
  PadicNum z2(11, Int(3), 12);
  auto a = R.mul(R.universal_character(z), R.universal_character(z2));
  auto b = R.universal_character(z * z2);
  for (long n = 0; n < 3; ++n) CHECK(((a[n] - b[n]).is_zero() || (a[n] - b[n]).valuation() >= 9));
  // classical point w0 = (1+p)^t - 1 recovers z^{k'}
  PadicNum w0 = R.classical_point(20);  // t = 10
  PadicNum spec = R.at(kz, w0);
  PadicNum expect = z.pow(20);
  CHECK((spec - expect).is_zero());
}

TEST_CASE("family action specialises to the single-weight action at w=0") {
  FamilyRing R(11, 10, 2, 16);
  FamilyDistModule FD(R, 13);
  DistModule D(11, 10, 13);
  ManinBasis B(11);
  std::mt19937_64 rng(3);

  // random family value with w-degree 0 part only
  FamilyDistModule::Value v = FD.zero();
  DistModule::Value v0(13, PadicNum::zero(11, PadicNum::PREC_EXACT));
  for (long j = 0; j < 13; ++j) {
    v0[j] = PadicNum(11, Int(rng() % 100000), 14);
    v[j][0] = v0[j];
  }
  Mat22 g{1, 3, 11, 22};  // in Sigma_0(11), det = 22 - 33 < 0... use det nonzero
  g = Mat22{1, 3, 11, 44};
  auto fam = FD.act(v, g);
  auto single = D.act(v0, g);
  for (long j = 0; j < 13; ++j) {
    PadicNum diff = fam[j][0] - single[j];
    long dv = diff.is_zero() ? diff.abs_prec() : diff.valuation();
    CHECK(dv >= std::max<long>(11 - j, 0));
  }
}

TEST_CASE("family lift for Delta at p=11, M=2, N=5") {
  EigenData d = delta_eigendata(30);
  auto P = run_lift_pipeline(d, 11, 5, +1);
  REQUIRE(P.lift.converged);
  const DistModule& D = *P.D;
  const ManinBasis& B = P.basis_np();

  FamilyRing R(11, 10, 2, D.work_prec());
  FamilyDistModule FD(R, D.nmoments());
  auto fam = family_lift(R, FD, D, B, P.refined, P.lift, 5);
  REQUIRE(fam.refusal.empty());
  CHECK(fam.converged);
  for (long n = 0; n < 2; ++n) CHECK(fam.eigen_defect[n] >= 5);

  // alpha_V(0) = alpha exactly, and alpha_V is a unit
  CHECK((fam.alpha[0] - P.refined.alpha).is_zero());
  CHECK(fam.alpha[0].valuation() == 0);

  // w = 0 specialisation reproduces the control lift
  for (long i = 0; i < B.ncosets(); ++i)
    for (long j = 0; j < D.nmoments(); ++j) {
      PadicNum diff = fam.symbol.values[i][j][0] - P.lift.symbol.values[i][j];
      CHECK((diff.is_zero() ? diff.abs_prec() : diff.valuation()) >=
            std::max<long>(P.lift.achieved_N - j, 0));
    }

  // specialisation towards weight 2 (k' = 0): the Hecke congruence
  // a_ell = tau(ell) = a_ell(11a1) mod 11
  auto spec = family_specialize(R, FD, D, B, fam, 0, {2, 3, 5, 7});
  CHECK(spec.precision >= 2);
  EigenData e11 = builtin_eigendata("11a1", 10);
  for (long ell : {2L, 3L, 5L, 7L}) {
    REQUIRE(spec.hecke.count(ell));
    PadicNum a = spec.hecke.at(ell);
    // congruent to tau(ell) mod 11
    PadicNum t(11, d.a(ell), 6);
    PadicNum c(11, e11.a(ell), 6);
    CHECK((a - t).valuation() >= 1);
    CHECK((a - c).valuation() >= 1);
    CHECK((t - c).valuation() >= 1);  // the classical congruence itself
  }

  // Ev-commutation square: family L_p specialised at w0 vs L_p of the
  // specialised symbol, normalised by alpha_V(w0)
  auto famL = family_lp(R, FD, fam, 1);
  PadicNum w0 = R.classical_point(0);
  auto lhs = famL.specialize(R, w0);

  PadicNum alpha_w0 = R.at(fam.alpha, w0);
  BranchedDistribution rhs = galois_evaluate(D, spec.symbol, 1);
  PadicNum ainv = alpha_w0.inverse();
  for (auto& [a, ms] : rhs.branches)
    for (auto& m : ms) m = m * ainv;

  long worst = PadicNum::PREC_EXACT;
  for (const auto& [a, ms] : lhs.branches) {
    const auto& ns = rhs.branches.at(a);
    for (long j = 0; j < 4; ++j) {
      PadicNum diff = ms[j] - ns[j];
      worst = std::min(worst, diff.is_zero() ? diff.abs_prec() : diff.valuation());
    }
  }
  CHECK(worst >= 2);  // M * v(w0) = 2 digits from the truncation budget

  // at w 0 the square closes at the full lift precision
  auto lhs0 = famL.specialize(R, PadicNum::zero(11, D.work_prec()));
  auto rhs0 = build_lp(P.refined, D, P.lift.symbol, 1);
  long worst0 = PadicNum::PREC_EXACT;
  for (const auto& [a, ms] : lhs0.branches) {
    const auto& ns = rhs0.branches.at(a);
    for (long j = 0; j < 4; ++j) {
      PadicNum diff = ms[j] - ns[j];
      worst0 = std::min(worst0, diff.is_zero() ? diff.abs_prec() : diff.valuation());
    }
  }
  CHECK(worst0 >= P.lift.achieved_N - 3);
}

TEST_CASE("family lift refuses positive slope") {
  EigenData f = builtin_eigendata("11a1", 30);
  auto refs = stabilize(f, 3, 8);
  ManinBasis BN(11), BNp(33);
  EigenDataView v{11, 0, [f](long ell) { return f.a(ell); }};
  auto eig = eigen_solve(BN, v, +1);
  DistModule D(3, 0, 8);
  PadicPolyModule M(3, 0, D.work_prec());
  auto phi = stabilise_symbol(M, BNp, BN, eig.symbol, refs[1]);
  ControlLiftResult fake;
  fake.slope = refs[1].slope;
  FamilyRing R(3, 0, 2, 10);
  FamilyDistModule FD(R, 8);
  RefinedEigenData bad = refs[1];
  auto fam = family_lift(R, FD, D, BNp, bad, fake, 4);
  CHECK(!fam.refusal.empty());
}
