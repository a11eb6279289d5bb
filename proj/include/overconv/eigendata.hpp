#ifndef OVERCONV_EIGENDATA_HPP
#define OVERCONV_EIGENDATA_HPP

// Eigenform data: level, weight (lambda = (k,0), classical weight k+2),
// Hecke eigenvalues, and p-refinements. Sources: the LMFDB newform API
// (with an on-disk JSON cache), elliptic-curve point counting for
// weight-2 rational forms, and the built-in q-expansion of Delta.

#include "overconv/padic.hpp"

#include <map>
#include <optional>
#include <string>

namespace ovc {

struct EigenData {
  std::string label;
  long level = 1;
  long k = 0;  // internal weight; classical weight is k+2
  // nebentypus: trivial or quadratic chi_D (D = 1 for trivial)
  long neben_disc = 1;
  std::map<long, Rat> hecke;  // prime -> a_ell
  std::string field_label = "1.1.1.1";  // Q
  std::string source;
  std::string fetched_at;

  Rat a(long ell) const;
  bool has(long ell) const { return hecke.count(ell) != 0; }
  long neben(long n) const;  // nebentypus value at n (0, +-1)
  void check_ramanujan() const;
};

struct RefinedEigenData {
  EigenData base;
  long p = 0;
  PadicNum alpha;
  Rat slope = 0;       // v_p(alpha)
  long refined_level = 0;  // N*p if p coprime to N, else N
  bool p_divides_level = false;
};

// a_ell from counting points of an integral Weierstrass model [a1,a2,a3,a4,a6]
EigenData point_count_eigendata(const std::array<long, 5>& ainv, long B, const std::string& label = "");

// tau(n) for n <= B from Delta = q prod (1-q^n)^24
EigenData delta_eigendata(long B);

// Known curve labels ("11a1", "37a1") and newform labels ("11.2.a.a",
// "1.12.a.a") resolved offline.
EigenData builtin_eigendata(const std::string& label, long B);

// HTTP GET against OVERCONV_LMFDB_URL with cache under OVERCONV_CACHE;
// cache key is (label, B). Falls back to cache when offline.
EigenData fetch_lmfdb(const std::string& label, long B);

EigenData twist(const EigenData& f, long D);

// Both p-refinements when p is prime to the level (roots of
// X^2 - a_p X + eps(p) p^{k+1}), the single refinement alpha = a_p otherwise.
std::vector<RefinedEigenData> stabilize(const EigenData& f, long p, long N);

// convenience: the small-slope (ordinary when it exists) refinement
RefinedEigenData small_slope_refinement(const EigenData& f, long p, long N);

}  // namespace ovc

#endif
