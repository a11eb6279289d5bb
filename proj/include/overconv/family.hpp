#ifndef OVERCONV_FAMILY_HPP
#define OVERCONV_FAMILY_HPP

// One-parameter weight families over a disc centred at k0. The ring is
// L[w]/(w^M) with PadicNum coefficients; w is the disc coordinate with
// classical weights k' = k0 + t (t = 0 mod p-1) sitting at
// w0 = (1+p)^t - 1. The universal character is
//   kappa_w(z) = z^{k0} (1+w)^{log<z>/log(1+p)},
// which specialises to z^{k'} at those points. Distribution modules over
// the family carry the same filtration as at a single weight, with the
// automorphy factor kappa_w(a+cx) in the matrix action.

#include "overconv/lfun.hpp"

namespace ovc {

class FamilyRing {
 public:
  FamilyRing(long p, long k0, long M, long prec) : p_(p), k0_(k0), M_(M), prec_(prec) {}

  long p() const { return p_; }
  long k0() const { return k0_; }
  long wdeg() const { return M_; }
  long prec() const { return prec_; }

  using Elt = std::vector<PadicNum>;  // w-coefficients, length M

  Elt zero() const { return Elt(M_, PadicNum::zero(p_, PadicNum::PREC_EXACT)); }
  Elt one() const;
  Elt from_padic(const PadicNum& x) const;
  Elt add(const Elt& x, const Elt& y) const;
  Elt sub(const Elt& x, const Elt& y) const;
  Elt neg(const Elt& x) const;
  Elt mul(const Elt& x, const Elt& y) const;
  Elt scale(const Elt& x, const PadicNum& s) const;
  Elt inverse(const Elt& x) const;  // requires unit constant term
  PadicNum at(const Elt& x, const PadicNum& w0) const;  // specialisation

  // kappa_w(z) for a unit z
  Elt universal_character(const PadicNum& z) const;
  // the disc coordinate of the classical weight k' = k0 + t
  PadicNum classical_point(long kprime) const;

 private:
  long p_, k0_, M_, prec_;
};

// distributions with FamilyRing moments under the weight-family action
class FamilyDistModule {
 public:
  using Value = std::vector<FamilyRing::Elt>;

  FamilyDistModule(const FamilyRing& R, long nmoments);
  const FamilyRing& ring() const { return R_; }
  long prime() const { return R_.p(); }
  long nmoments() const { return nmom_; }
  long work_prec() const { return work_; }

  Value zero() const { return Value(nmom_, R_.zero()); }
  Value add(const Value& x, const Value& y) const;
  Value sub(const Value& x, const Value& y) const;
  Value neg(const Value& x) const;
  Value scale(const Value& x, const FamilyRing::Elt& s) const;
  Value act(const Value& x, const Mat22& g) const;

  long fil_level(const Value& x) const;  // min over w-degrees
  // w-graded pieces as single-weight distribution values
  DistModule::Value component(const Value& x, long n) const;

 private:
  struct Table {
    // rows[j][i] = family ring element
    std::vector<std::vector<FamilyRing::Elt>> rows;
    bool uniform_tail;
  };
  const Table& table(const Mat22& g) const;

  const FamilyRing& R_;
  long nmom_, work_;
  mutable std::mutex mu_;
  mutable std::map<Mat22, Table> cache_;
};

struct FamilyLiftResult {
  ModularSymbol<FamilyDistModule> symbol;
  FamilyRing::Elt alpha;            // alpha_V(w), alpha_V(0) = alpha
  std::vector<long> eigen_defect;   // filtration level per w-degree
  long denom_bound = 0;             // worst p-power denominator met in the
                                    // classical solves (congruence module)
  bool converged = false;
  std::string refusal;
};

// degree-by-degree family lift over the control lift of an ordinary
// refinement; each w-degree solves (U_p - alpha) X = alpha^{(n)} Phi_0 - R_n
// with the new alpha-coefficient fixed by solvability on the classical block
FamilyLiftResult family_lift(const FamilyRing& R, const FamilyDistModule& FD, const DistModule& D,
                             const ManinBasis& BNp, const RefinedEigenData& f,
                             const ControlLiftResult& lift, long N);

struct FamilySpecialization {
  ModularSymbol<DistModule> symbol;  // weight k' distribution symbol
  long kprime = 0;
  PadicNum w0;
  long precision = 0;  // M * v(w0), the truncation-limited precision
  std::map<long, PadicNum> hecke;  // reported a_ell of the specialisation
};

FamilySpecialization family_specialize(const FamilyRing& R, const FamilyDistModule& FD,
                                       const DistModule& Dk, const ManinBasis& BNp,
                                       const FamilyLiftResult& fam, long kprime,
                                       const std::vector<long>& hecke_ells);

// branch moments valued in the family ring: L_p(V) = alpha_V^{-1} Ev^c
struct FamilyBranched {
  long p = 0;
  long depth = 1;
  long nmom = 0;
  std::map<long, std::vector<FamilyRing::Elt>> branches;

  BranchedDistribution specialize(const FamilyRing& R, const PadicNum& w0) const;
};

FamilyBranched family_lp(const FamilyRing& R, const FamilyDistModule& FD, const FamilyLiftResult& fam,
                         long c = 1);

}  // namespace ovc

#endif
