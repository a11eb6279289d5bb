#ifndef OVERCONV_NUMBERS_HPP
#define OVERCONV_NUMBERS_HPP

// Shared exact number types and small modular-arithmetic helpers.

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace ovc {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int pow_int(const Int& b, unsigned long e) {
  Int r;
  mpz_pow_ui(r.backend().data(), b.backend().data(), e);
  return r;
}

inline Int pow_int(long b, unsigned long e) { return pow_int(Int(b), e); }

// a mod m in [0, m)
inline Int mod_pos(const Int& a, const Int& m) {
  Int r = a % m;
  if (r < 0) r += m;
  return r;
}

inline Int mul_mod(const Int& a, const Int& b, const Int& m) { return mod_pos(a * b, m); }

inline Int inv_mod(const Int& a, const Int& m) {
  Int r;
  if (mpz_invert(r.backend().data(), Int(mod_pos(a, m)).backend().data(), m.backend().data()) == 0)
    throw std::domain_error("inv_mod: element not invertible");
  return r;
}

inline Int pow_mod(Int b, Int e, const Int& m) {
  Int r;
  mpz_powm(r.backend().data(), b.backend().data(), e.backend().data(), m.backend().data());
  return r;
}

// valuation of n at p; n must be nonzero
inline long val_p(Int n, long p) {
  if (n == 0) throw std::domain_error("val_p of zero");
  long v = 0;
  while (n % p == 0) { n /= p; ++v; }
  return v;
}

inline long val_p(const Rat& q, long p) {
  if (q == 0) throw std::domain_error("val_p of zero");
  return val_p(numerator(q), p) - val_p(denominator(q), p);
}

// Kronecker symbol (a|n), full generality for fundamental discriminants.
inline int kronecker(Int a, Int n) {
  return mpz_kronecker(a.backend().data(), n.backend().data());
}

inline bool is_prime(long n) {
  if (n < 2) return false;
  for (long d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<long> primes_up_to(long bound) {
  std::vector<long> out;
  for (long n = 2; n <= bound; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

// smallest primitive root mod p^m (p odd prime)
long primitive_root(long p, int m);

// gcd for machine ints
inline long gcd_l(long a, long b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) { long t = a % b; a = b; b = t; }
  return a;
}

}  // namespace ovc

#endif
