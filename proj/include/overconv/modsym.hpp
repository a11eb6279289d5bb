#ifndef OVERCONV_MODSYM_HPP
#define OVERCONV_MODSYM_HPP

// Modular symbols for Gamma_0(M) stored on the Manin coset list P^1(Z/M):
// the value at coset i is phi({g_i 0 -> g_i infinity}) for a fixed lift
// g_i in SL_2(Z) with bottom row (c_i : d_i). Relations, Hecke operators
// and cusp-path evaluations all reduce to right actions by matrices in
// Gamma_0(M) (times the operator matrices), so distribution coefficients
// stay inside the Sigma_0(p) monoid whenever p | M.

#include "overconv/coeffs.hpp"

#include <omp.h>

#include <functional>

namespace ovc {

class ManinBasis {
 public:
  explicit ManinBasis(long level);

  long level() const { return level_; }
  long ncosets() const { return static_cast<long>(reps_.size()); }
  const Mat22& rep(long i) const { return reps_[i]; }

  // index of the coset with bottom row (c : d)
  long index(long c, long d) const;
  long index_of(const Mat22& g) const { return index(g.c, g.d); }

  struct RelTerm {
    long coset;
    Mat22 twist;  // value contribution: v_coset | twist
  };
  // two-term relations: v_x + v_y|t = 0, one per sigma-orbit
  struct Rel2 {
    long x;
    RelTerm other;
  };
  // three-term relations: v_x + v_y|t1 + v_z|t2 = 0, one per tau-orbit
  struct Rel3 {
    long x;
    RelTerm second, third;
  };
  const std::vector<Rel2>& two_term() const { return rel2_; }
  const std::vector<Rel3>& three_term() const { return rel3_; }

  // unimodular path decomposition (Manin's trick): value of a symbol on
  // {from -> to} is sum of sign * v_coset | twist over the returned terms
  struct PathTerm {
    int sign;
    long coset;
    Mat22 twist;
  };
  std::vector<PathTerm> path(const Rat& from, bool from_inf, const Rat& to, bool to_inf) const;
  // path {num/den -> infinity}
  std::vector<PathTerm> path_to_inf(const Int& num, const Int& den) const;

 private:
  void build();
  std::pair<long, long> normalize(long c, long d) const;

  long level_;
  std::vector<Mat22> reps_;
  std::map<std::pair<long, long>, long> index_;
  std::vector<Rel2> rel2_;
  std::vector<Rel3> rel3_;
};

// symbol = one coefficient value per coset
template <class Module>
struct ModularSymbol {
  const ManinBasis* basis = nullptr;
  std::vector<typename Module::Value> values;
};

template <class Module>
ModularSymbol<Module> symbol_zero(const Module& M, const ManinBasis& B) {
  ModularSymbol<Module> s;
  s.basis = &B;
  s.values.assign(B.ncosets(), M.zero());
  return s;
}

// evaluate a symbol on a path given by decomposition terms
template <class Module>
typename Module::Value eval_terms(const Module& M, const ModularSymbol<Module>& phi,
                                  const std::vector<ManinBasis::PathTerm>& terms,
                                  const Mat22* post = nullptr) {
  typename Module::Value acc = M.zero();
  for (const auto& t : terms) {
    Mat22 tw = post ? t.twist * (*post) : t.twist;
    auto v = M.act(phi.values[t.coset], tw);
    acc = (t.sign > 0) ? M.add(acc, v) : M.sub(acc, v);
  }
  return acc;
}

// Hecke-type operator: a sum of coset matrices applied through path
// decompositions, precomputed per Manin generator at construction.
class HeckeOp {
 public:
  HeckeOp(const ManinBasis& B, std::vector<Mat22> coset_mats, std::string name);

  const std::string& name() const { return name_; }
  const ManinBasis& basis() const { return basis_; }
  // all matrices that will be used as right actions (for cache warming)
  std::vector<Mat22> action_matrices() const;

  // Applying the operator is a data-parallel loop over Manin generators;
  // all reads are immutable, so the OpenMP path shares no mutable state
  // once the transform tables are warm. parallel=false is the serial
  // reference that tests compare against.
  template <class Module>
  ModularSymbol<Module> apply(const Module& M, const ModularSymbol<Module>& phi, bool parallel = true) const {
    if (phi.basis != &basis_) throw std::logic_error("HeckeOp::apply: symbol on a different basis");
    ModularSymbol<Module> out;
    out.basis = &basis_;
    out.values.assign(basis_.ncosets(), M.zero());
    long n = basis_.ncosets();
    if (parallel) {
#pragma omp parallel for schedule(dynamic)
      for (long i = 0; i < n; ++i) out.values[i] = eval_terms(M, phi, terms_[i]);
    } else {
      for (long i = 0; i < n; ++i) out.values[i] = eval_terms(M, phi, terms_[i]);
    }
    return out;
  }

  const std::vector<std::vector<ManinBasis::PathTerm>>& terms() const { return terms_; }

 private:
  const ManinBasis& basis_;
  std::vector<Mat22> mats_;
  std::string name_;
  // terms_[i] = decomposition of sum_t mats_[t] * {g_i 0 -> g_i inf}
  std::vector<std::vector<ManinBasis::PathTerm>> terms_;
};

HeckeOp make_tell(const ManinBasis& B, long ell);  // ell coprime to the level
HeckeOp make_up(const ManinBasis& B, long p);      // p dividing the level
HeckeOp make_involution(const ManinBasis& B);      // [[-1,0],[0,1]]

// relation defects: for rationals, exact zero test; for p-adic modules,
// minimal guaranteed valuation over all relations
template <class Module>
bool check_relations_exact(const Module& M, const ModularSymbol<Module>& phi);

long check_relations_valuation(const DistModule& M, const ModularSymbol<DistModule>& phi);
long check_relations_valuation(const PadicPolyModule& M, const ModularSymbol<PadicPolyModule>& phi);

// ---------------------------------------------------------------------
// exact rational eigensymbols

struct EigenSolveResult {
  ModularSymbol<RatPolyModule> symbol;
  long eigenspace_dim = 0;            // after all constraints (must be 1)
  std::vector<long> hecke_used;       // primes constrained
  long relation_nullity = 0;          // dim of the full relation space
};

class EigenDataView {
 public:
  long level;
  long k;
  std::function<Rat(long)> a;  // Hecke eigenvalue accessor
};

EigenSolveResult eigen_solve(const ManinBasis& B, const EigenDataView& f, int sign);

// classical evaluation: phi({a/c -> inf}) for a = 0..c-1, as the raw
// per-residue profile; pairing against (a+cx)^j is ev_twisted. These
// compose to Ev(chi, j) = sum_a chi(a) ev_twisted(profile[a], a, c, j).
std::vector<std::vector<Rat>> ev_profile(const RatPolyModule& M, const ModularSymbol<RatPolyModule>& phi,
                                         long c);
Rat ev_twisted(const std::vector<Rat>& value, long a, long c, long j);

}  // namespace ovc

#endif
