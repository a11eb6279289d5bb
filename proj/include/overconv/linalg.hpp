#ifndef OVERCONV_LINALG_HPP
#define OVERCONV_LINALG_HPP

// Exact linear algebra: rational nullspaces (for eigensymbol solving) and
// linear systems over Z/p^e (for symbol sampling and family corrections).

#include "overconv/padic.hpp"

#include <optional>

namespace ovc {

using RatMatrix = std::vector<std::vector<Rat>>;
using PadicMatrix = std::vector<std::vector<PadicNum>>;

// Gaussian elimination over Q_p with valuation pivoting and per-entry
// precision. Free variables are set to zero; rows that end up visibly
// inconsistent (residual not zero at its stated precision) yield nullopt.
std::optional<std::vector<PadicNum>> padic_solve(PadicMatrix A, std::vector<PadicNum> b);

// a generator of the left kernel of A (one-dimensional case): a vector y
// with y^T A = 0 at working precision, normalised so its first unit entry
// is 1; empty if none found
std::vector<PadicNum> padic_left_kernel(const PadicMatrix& A);

// basis of the right kernel of A (rows x cols), as column vectors
std::vector<std::vector<Rat>> nullspace(RatMatrix A);

// Solver over Z/p^e. Rows of A are reduced mod p^e; the solution module
// of A x = 0 is spanned by the returned kernel generators (including
// p-power torsion directions).
class ZpeSolver {
 public:
  ZpeSolver(std::vector<std::vector<Int>> A, long p, long e);

  long rows() const { return n_; }
  long cols() const { return m_; }

  // particular solution of A x = b, if one exists
  std::optional<std::vector<Int>> solve(const std::vector<Int>& b) const;
  // generators of the kernel
  const std::vector<std::vector<Int>>& kernel() const { return kernel_; }

 private:
  void echelonize();

  long p_, e_, n_, m_;
  Int mod_;
  std::vector<std::vector<Int>> A_;    // echelonized copy
  std::vector<std::vector<Int>> ops_;  // row operations applied (n x n)
  std::vector<long> pivot_col_;        // per echelon row: column index
  std::vector<long> pivot_val_;        // per echelon row: p-valuation of pivot
  std::vector<std::vector<Int>> kernel_;
};

}  // namespace ovc

#endif
