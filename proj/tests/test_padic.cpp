#include "doctest.h"

#include "overconv/padic.hpp"

#include <random>

using namespace ovc;

TEST_CASE("construction and truncation") {
  PadicNum x(5, Int(250), 6);  // 250 = 2 * 5^3
  CHECK(x.valuation() == 3);
  CHECK(x.rel_prec() == 3);
  CHECK(x.residue(6) == 250);

  PadicNum z = PadicNum::zero(5, 4);
  CHECK(z.is_zero());
  CHECK(z.abs_prec() == 4);

  PadicNum t = x.truncate_abs(4);
  CHECK(t.valuation() == 3);
  CHECK(t.rel_prec() == 1);
}

TEST_CASE("rational constructor") {
  // 1/2 in Z_5 at precision 4: inverse of 2 mod 625 = 313
  PadicNum h(5, Rat(1, 2), 4);
  CHECK(h.residue(4) == 313);
  PadicNum q(5, Rat(7, 25), 3);
  CHECK(q.valuation() == -2);
  PadicNum two(5, Rat(2), 6);
  CHECK((h * two).residue(4) == 1);
}

TEST_CASE("ring axioms at tracked precision") {
  std::mt19937_64 rng(20240811);
  for (long p : {3L, 5L, 11L}) {
    for (int iter = 0; iter < 100; ++iter) {
      auto rnd = [&]() {
        Int n = Int(rng() % 100000) - 50000;
        long prec = 3 + static_cast<long>(rng() % 8);
        return PadicNum(p, n, prec);
      };
      PadicNum a = rnd(), b = rnd(), c = rnd();
      CHECK(((a + b) + c) == (a + (b + c)));
      CHECK((a * (b + c)) == (a * b + a * c));
      CHECK((a * b) == (b * a));
      CHECK((a + (-a)).is_zero());
    }
  }
}

TEST_CASE("teichmuller") {
  // fixed point
  CHECK(teichmuller(1, 5, 3).residue(3) == 1);
  // omega(2) mod 125: iterate x -> x^5; expected 57
  CHECK(teichmuller(2, 5, 3).residue(3) == 57);
  // omega(p-1) = -1
  CHECK(teichmuller(4, 5, 4).residue(4) == 624);
  CHECK_THROWS_AS(teichmuller(10, 5, 3), std::domain_error);
  // omega(a)^{p-1} = 1 at full precision, all residues
  for (long p : {3L, 7L, 13L}) {
    for (long a = 1; a < p; ++a) {
      PadicNum w = teichmuller(a, p, 8);
      CHECK((w.pow(p - 1) - PadicNum::exact_int(p, 1)).is_zero());
      CHECK(mod_pos(w.residue(8), p) == a);
    }
  }
}

TEST_CASE("padic log") {
  long p = 5;
  CHECK(padic_log(PadicNum::exact_int(p, 1)).is_zero());
  // log(6) mod 5^4 from partial sums with tail bound: compute independently
  // sum_{n=1..6} (-1)^{n+1} 5^n / n mod 5^4 : 5 - 25/2 + 125/3 - 625/4 ...
  Rat s = 0;
  for (int n = 1; n <= 6; ++n) {
    Rat term = Rat(Int(n % 2 ? 1 : -1) * pow_int(5, n), n);
    s += term;
  }
  PadicNum expect(p, s, 4);
  PadicNum got = padic_log(PadicNum(p, Int(6), 5));
  CHECK((got - expect).is_zero());
  CHECK(got.abs_prec() >= 4);

  // homomorphism: log(x^2) = 2 log(x) for x = 1 + p^2
  PadicNum x(p, Int(26), 9);
  PadicNum lhs = padic_log(x * x);
  PadicNum rhs = padic_log(x) * PadicNum::exact_int(p, 2);
  CHECK(lhs == rhs);

  CHECK_THROWS_AS(padic_log(PadicNum(p, Int(2), 6)), std::domain_error);

  // exp inverts log on 1 + pZp
  PadicNum y(p, Int(1 + 2 * 5), 7);
  CHECK(padic_exp(padic_log(y)) == y);
}

TEST_CASE("hensel roots: spec examples") {
  // X^2 + X + 3 over Q_3: unit root = 2 mod 3 and a valuation-1 root
  long p = 3, N = 5;
  PadicPoly f({PadicNum::exact_int(p, 3), PadicNum::exact_int(p, 1), PadicNum::exact_int(p, 1)});
  auto roots = hensel_roots(f, p, N);
  REQUIRE(roots.size() == 2);
  PadicNum alpha = roots[0].valuation() == 0 ? roots[0] : roots[1];
  PadicNum beta = roots[0].valuation() == 0 ? roots[1] : roots[0];
  CHECK(mod_pos(alpha.residue(1), 3) == 2);
  CHECK(beta.valuation() == 1);
  // alpha*beta = 3, alpha+beta = -1
  CHECK((alpha * beta - PadicNum::exact_int(p, 3)).is_zero());
  CHECK((alpha + beta + PadicNum::exact_int(p, 1)).is_zero());
  // each annihilates f to precision N
  for (const auto& r : roots) {
    PadicNum v = f.eval(r);
    CHECK((v.is_zero() ? v.abs_prec() : v.valuation()) >= N);
  }

  // X - 1 -> [1]
  PadicPoly g({PadicNum::exact_int(p, -1), PadicNum::exact_int(p, 1)});
  auto r1 = hensel_roots(g, p, 6);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].residue(6) == 1);

  // X^2 - tau(11) X + 11^11 over Q_11: unit root and valuation-11 root
  Int tau11 = 534612;
  PadicPoly h({PadicNum(11, pow_int(11, 11), PadicNum::PREC_EXACT),
               PadicNum(11, Int(-tau11), PadicNum::PREC_EXACT), PadicNum::exact_int(11, 1)});
  auto rr = hensel_roots(h, 11, 6);
  REQUIRE(rr.size() == 2);
  long v0 = rr[0].valuation(), v1 = rr[1].valuation();
  CHECK(((v0 == 0 && v1 == 11) || (v0 == 11 && v1 == 0)));

  // supersingular-type: X^2 + 3 over Q_3 is refused
  PadicPoly ss({PadicNum::exact_int(3, 3), PadicNum::zero(3, PadicNum::PREC_EXACT), PadicNum::exact_int(3, 1)});
  CHECK_THROWS_AS(hensel_roots(ss, 3, 4), std::domain_error);
}

TEST_CASE("valuations of sums of roots match constant term") {
  // for quadratics X^2 + bX + c with random b unit, c = p^v * unit
  std::mt19937_64 rng(7);
  long p = 7;
  for (int iter = 0; iter < 20; ++iter) {
    // unit trace and positive-valuation constant term: slopes {0, v}
    long b = 1 + static_cast<long>(rng() % (p - 1));
    long v = 1 + static_cast<long>(rng() % 4);
    long cu = 1 + static_cast<long>(rng() % (p - 1));
    Int c = Int(cu) * pow_int(p, v);
    PadicPoly f({PadicNum(p, c, PadicNum::PREC_EXACT), PadicNum::exact_int(p, b), PadicNum::exact_int(p, 1)});
    auto roots = hensel_roots(f, p, 6);
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].valuation() + roots[1].valuation() == v);
  }
}
