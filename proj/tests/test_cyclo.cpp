#include "doctest.h"

#include "overconv/characters.hpp"

using namespace ovc;

TEST_CASE("cyclotomic field basics") {
  CycloField F(3, 2, 8);  // Q_3(zeta_9), degree 6
  CHECK(F.degree() == 6);
  CycloElt z = F.root_power(1);
  // z^9 = 1, z^3 has order 3
  CycloElt z9 = F.one();
  for (int i = 0; i < 9; ++i) z9 = z9 * z;
  CHECK((z9 - F.one()).valuation_lower_bound() >= 8);
  // Phi_9(z) = z^6 + z^3 + 1 = 0
  CycloElt phi = F.root_power(6) + F.root_power(3) + F.one();
  CHECK(phi.valuation_lower_bound() >= 8);
  // galois conjugation is a ring map: (z*u)^sigma = z^sigma u^sigma
  CycloElt u = F.root_power(4) + F.from_rat(Rat(2));
  CycloElt lhs = (z * u).galois(2);
  CycloElt rhs = z.galois(2) * u.galois(2);
  CHECK((lhs - rhs).valuation_lower_bound() >= 8);
}

TEST_CASE("character values and orders") {
  for (long p : {3L, 5L, 7L}) {
    for (int m : {1, 2}) {
      auto chars = FiniteCharacter::primitive_characters(p, m);
      long pm = 1;
      for (int i = 0; i < m; ++i) pm *= p;
      // phi(p^m) - phi(p^{m-1}) primitive characters
      long expect = (m == 1) ? p - 2 : (p - 1) * (pm / p) - (p - 1) * (pm / p) / p;
      if (m == 1) expect = p - 2;  // nontrivial characters mod p
      CHECK(static_cast<long>(chars.size()) == expect);
      CycloField F(p, m, 8);
      for (const auto& chi : chars) {
        // multiplicativity chi(2)chi(3) = chi(6) when all are units
        if (gcd_l(6, p) == 1) {
          CycloElt v = chi.value(2, F, 8) * chi.value(3, F, 8) - chi.value(6, F, 8);
          CHECK(v.valuation_lower_bound() >= 7);
        }
        // chi(x)^order = 1
        CycloElt w = F.one();
        for (long i = 0; i < chi.order(); ++i) w = w * chi.value(2, F, 8);
        if (gcd_l(2, p) == 1) CHECK((w - F.one()).valuation_lower_bound() >= 7);
      }
    }
  }
}

TEST_CASE("gauss sums: tau(chi) tau(chibar) = chi(-1) p^m") {
  for (long p : {3L, 5L, 7L, 11L, 13L}) {
    for (int m : {1, 2}) {
      long pm = 1;
      for (int i = 0; i < m; ++i) pm *= p;
      CycloField F(p, m, 6);
      for (const auto& chi : FiniteCharacter::primitive_characters(p, m)) {
        CycloElt t = gauss_sum(chi, F, 6);
        CycloElt tb = gauss_sum(chi.bar(), F, 6);
        PadicNum sign = PadicNum::exact_int(p, chi.is_odd() ? -1 : 1);
        CycloElt expect = F.from_padic(sign * PadicNum::exact_int(p, pm));
        CHECK((t * tb - expect).valuation_lower_bound() >= 5);
      }
    }
  }
}

TEST_CASE("quadratic gauss sum squares to +-p") {
  // tau(chi)^2 = chi(-1) p for the quadratic character mod p
  for (long p : {5L, 13L}) {  // p = 1 mod 4: tau^2 = p
    FiniteCharacter chi(p, 1, (p - 1) / 2, 0);
    CHECK(chi.order() == 2);
    CHECK(!chi.is_odd());
    CycloField F(p, 1, 6);
    CycloElt t = gauss_sum(chi, F, 6);
    CHECK((t * t - F.from_rat(Rat(p))).valuation_lower_bound() >= 5);
  }
  for (long p : {3L, 7L, 11L}) {  // p = 3 mod 4: tau^2 = -p
    FiniteCharacter chi(p, 1, (p - 1) / 2, 0);
    CHECK(chi.is_odd());
    CycloField F(p, 1, 6);
    CycloElt t = gauss_sum(chi, F, 6);
    CHECK((t * t + F.from_rat(Rat(p))).valuation_lower_bound() >= 5);
  }
}

TEST_CASE("order-3 character mod 7 against brute force") {
  // chi of order 3 mod 7: tame exponent 2 against the generator
  auto chars = FiniteCharacter::primitive_characters(7, 1);
  const FiniteCharacter* chi3 = nullptr;
  for (const auto& c : chars)
    if (c.order() == 3) { chi3 = &c; break; }
  REQUIRE(chi3 != nullptr);
  CycloField F(7, 1, 8);
  // direct 6-term summation with explicit character values
  CycloElt tau = F.zero();
  for (long a = 1; a <= 6; ++a) tau = tau + chi3->value(a, F, 8) * F.root_power(a);
  CycloElt lib = gauss_sum(*chi3, F, 8);
  CHECK((tau - lib).valuation_lower_bound() >= 8);
  // and |tau|^2 = 7
  CycloElt tb = gauss_sum(chi3->bar(), F, 8);
  CHECK((lib * tb - F.from_rat(Rat(7))).valuation_lower_bound() >= 7);
}

TEST_CASE("tame character values in Z_p") {
  FiniteCharacter chi(5, 1, 1, 0);  // order 4 character mod 5
  CHECK(chi.order() == 4);
  PadicNum v = chi.value_padic(2, 8);
  // chi(2)^4 = 1, chi(2)^2 = chi(4) = chi(-1)
  CHECK((v.pow(4) - PadicNum::exact_int(5, 1)).is_zero());
  PadicNum vm1 = chi.value_padic(4, 8);
  CHECK((v * v - vm1).is_zero());
  CHECK(chi.value_padic(10, 8).is_zero());
}
