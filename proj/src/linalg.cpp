#include "overconv/linalg.hpp"

namespace ovc {

std::vector<std::vector<Rat>> nullspace(RatMatrix A) {
  if (A.empty()) return {};
  long n = static_cast<long>(A.size());
  long m = static_cast<long>(A[0].size());
  std::vector<long> pivot_of_col(m, -1);
  long r = 0;
  for (long col = 0; col < m && r < n; ++col) {
    long piv = -1;
    for (long i = r; i < n; ++i) {
      if (A[i][col] != 0) { piv = i; break; }
    }
    if (piv < 0) continue;
    std::swap(A[piv], A[r]);
    Rat inv = Rat(1) / A[r][col];
    for (long c = col; c < m; ++c) A[r][c] *= inv;
    for (long i = 0; i < n; ++i) {
      if (i == r || A[i][col] == 0) continue;
      Rat f = A[i][col];
      for (long c = col; c < m; ++c) A[i][c] -= f * A[r][c];
    }
    pivot_of_col[col] = r;
    ++r;
  }
  std::vector<std::vector<Rat>> basis;
  for (long f = 0; f < m; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Rat> v(m, Rat(0));
    v[f] = 1;
    for (long col = 0; col < m; ++col) {
      long pr = pivot_of_col[col];
      if (pr >= 0) v[col] = -A[pr][f];
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

ZpeSolver::ZpeSolver(std::vector<std::vector<Int>> A, long p, long e)
    : p_(p), e_(e), n_(static_cast<long>(A.size())), m_(A.empty() ? 0 : static_cast<long>(A[0].size())),
      mod_(pow_int(p, static_cast<unsigned long>(e))), A_(std::move(A)) {
  for (auto& row : A_)
    for (auto& x : row) x = mod_pos(x, mod_);
  ops_.assign(n_, std::vector<Int>(n_, 0));
  for (long i = 0; i < n_; ++i) ops_[i][i] = 1;
  echelonize();
}

void ZpeSolver::echelonize() {
  auto val_of = [&](const Int& x) -> long {
    if (x == 0) return e_;
    return std::min<long>(val_p(x, p_), e_);
  };
  long r = 0;
  for (long col = 0; col < m_ && r < n_; ++col) {
    long best = -1, bestv = e_;
    for (long i = r; i < n_; ++i) {
      long v = val_of(A_[i][col]);
      if (v < bestv) { bestv = v; best = i; }
    }
    if (best < 0 || bestv >= e_) continue;
    std::swap(A_[best], A_[r]);
    std::swap(ops_[best], ops_[r]);
    // normalise pivot to p^v
    Int u = A_[r][col] / pow_int(p_, static_cast<unsigned long>(bestv));
    Int uinv = inv_mod(u, mod_);
    for (auto& x : A_[r]) x = mul_mod(x, uinv, mod_);
    for (auto& x : ops_[r]) x = mul_mod(x, uinv, mod_);
    Int pv = pow_int(p_, static_cast<unsigned long>(bestv));
    for (long i = r + 1; i < n_; ++i) {
      if (A_[i][col] == 0) continue;
      Int q = A_[i][col] / pv;  // exact: valuation >= bestv by pivot choice
      for (long c = 0; c < m_; ++c) A_[i][c] = mod_pos(A_[i][c] - q * A_[r][c], mod_);
      for (long c = 0; c < n_; ++c) ops_[i][c] = mod_pos(ops_[i][c] - q * ops_[r][c], mod_);
    }
    pivot_col_.push_back(col);
    pivot_val_.push_back(bestv);
    ++r;
  }

  // kernel generators: free columns (pre-scaled by the worst pivot
  // valuation so back-substitution always divides) and torsion directions
  long V = 0;
  for (long v : pivot_val_) V = std::max(V, v);
  long nr = static_cast<long>(pivot_col_.size());
  std::vector<long> pivot_of_col(m_, -1);
  for (long i = 0; i < nr; ++i) pivot_of_col[pivot_col_[i]] = i;

  auto back_substitute = [&](std::vector<Int>& x) -> bool {
    for (long i = nr - 1; i >= 0; --i) {
      long col = pivot_col_[i];
      Int rhs = 0;
      for (long c = col + 1; c < m_; ++c) rhs -= A_[i][c] * x[c];
      rhs = mod_pos(rhs, mod_);
      Int pv = pow_int(p_, static_cast<unsigned long>(pivot_val_[i]));
      if (rhs % pv != 0) return false;
      x[col] = rhs / pv;
    }
    return true;
  };

  for (long f = 0; f < m_; ++f) {
    if (pivot_of_col[f] >= 0) continue;
    std::vector<Int> x(m_, 0);
    x[f] = pow_int(p_, static_cast<unsigned long>(V));
    if (back_substitute(x)) kernel_.push_back(std::move(x));
  }
  for (long i = 0; i < nr; ++i) {
    if (pivot_val_[i] == 0) continue;
    std::vector<Int> x(m_, 0);
    x[pivot_col_[i]] = pow_int(p_, static_cast<unsigned long>(e_ - pivot_val_[i]));
    // rows below i have zeros in this column; solve the rows above only
    bool ok = true;
    for (long r2 = i - 1; r2 >= 0 && ok; --r2) {
      long col = pivot_col_[r2];
      Int rhs = 0;
      for (long c = col + 1; c < m_; ++c)
        if (x[c] != 0) rhs -= A_[r2][c] * x[c];
      rhs = mod_pos(rhs, mod_);
      Int pv = pow_int(p_, static_cast<unsigned long>(pivot_val_[r2]));
      if (rhs % pv != 0) { ok = false; break; }
      x[col] = rhs / pv;
    }
    if (ok) kernel_.push_back(std::move(x));
  }
}

std::optional<std::vector<Int>> ZpeSolver::solve(const std::vector<Int>& b) const {
  if (static_cast<long>(b.size()) != n_) throw std::logic_error("ZpeSolver::solve: size mismatch");
  // transformed right-hand side
  std::vector<Int> y(n_, 0);
  for (long i = 0; i < n_; ++i) {
    Int acc = 0;
    for (long j = 0; j < n_; ++j)
      if (ops_[i][j] != 0 && b[j] != 0) acc += ops_[i][j] * b[j];
    y[i] = mod_pos(acc, mod_);
  }
  long nr = static_cast<long>(pivot_col_.size());
  for (long i = nr; i < n_; ++i)
    if (y[i] != 0) return std::nullopt;
  std::vector<Int> x(m_, 0);
  for (long i = nr - 1; i >= 0; --i) {
    long col = pivot_col_[i];
    Int rhs = y[i];
    for (long c = col + 1; c < m_; ++c) rhs -= A_[i][c] * x[c];
    rhs = mod_pos(rhs, mod_);
    Int pv = pow_int(p_, static_cast<unsigned long>(pivot_val_[i]));
    if (rhs % pv != 0) return std::nullopt;
    x[col] = rhs / pv;
  }
  return x;
}

}  // namespace ovc

namespace ovc {

namespace {

long val_bound(const PadicNum& x) { return x.is_zero() ? x.abs_prec() : x.valuation(); }

}  // namespace

std::optional<std::vector<PadicNum>> padic_solve(PadicMatrix A, std::vector<PadicNum> b) {
  long n = static_cast<long>(A.size());
  long m = n ? static_cast<long>(A[0].size()) : 0;
  long p = 2;
  for (const auto& row : A)
    for (const auto& x : row)
      if (x.prime()) { p = x.prime(); break; }

  std::vector<long> pivot_of_col(m, -1), col_of_row(n, -1);
  long r = 0;
  for (long col = 0; col < m && r < n; ++col) {
    long best = -1, bestv = PadicNum::PREC_EXACT;
    for (long i = r; i < n; ++i) {
      if (A[i][col].is_zero()) continue;
      if (A[i][col].valuation() < bestv) { bestv = A[i][col].valuation(); best = i; }
    }
    if (best < 0) continue;
    std::swap(A[best], A[r]);
    std::swap(b[best], b[r]);
    for (long i = r + 1; i < n; ++i) {
      if (A[i][col].is_zero()) continue;
      PadicNum f = A[i][col] / A[r][col];
      for (long c = col; c < m; ++c) A[i][c] -= f * A[r][c];
      b[i] -= f * b[r];
    }
    pivot_of_col[col] = r;
    col_of_row[r] = col;
    ++r;
  }
  for (long i = r; i < n; ++i)
    if (!b[i].is_zero()) return std::nullopt;

  std::vector<PadicNum> x(m, PadicNum::zero(p, PadicNum::PREC_EXACT));
  for (long i = r - 1; i >= 0; --i) {
    long col = col_of_row[i];
    PadicNum rhs = b[i];
    for (long c = col + 1; c < m; ++c) {
      if (x[c].is_zero() && x[c].abs_prec() >= PadicNum::PREC_EXACT / 2) continue;
      rhs -= A[i][c] * x[c];
    }
    x[col] = rhs / A[i][col];
  }
  return x;
}

std::vector<PadicNum> padic_left_kernel(const PadicMatrix& A) {
  long n = static_cast<long>(A.size());
  if (n == 0) return {};
  long m = static_cast<long>(A[0].size());
  // y^T A = 0  <=>  A^T y = 0: eliminate A^T and read one free direction
  PadicMatrix T(m, std::vector<PadicNum>(n));
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < m; ++j) T[j][i] = A[i][j];

  long p = 2;
  for (const auto& row : T)
    for (const auto& x : row)
      if (x.prime()) { p = x.prime(); break; }

  std::vector<long> pivot_of_col(n, -1), col_of_row(m, -1);
  long r = 0;
  for (long col = 0; col < n && r < m; ++col) {
    long best = -1, bestv = PadicNum::PREC_EXACT;
    for (long i = r; i < m; ++i) {
      if (T[i][col].is_zero()) continue;
      if (T[i][col].valuation() < bestv) { bestv = T[i][col].valuation(); best = i; }
    }
    if (best < 0) continue;
    std::swap(T[best], T[r]);
    for (long i = r + 1; i < m; ++i) {
      if (T[i][col].is_zero()) continue;
      PadicNum f = T[i][col] / T[r][col];
      for (long c = col; c < n; ++c) T[i][c] -= f * T[r][c];
    }
    pivot_of_col[col] = r;
    col_of_row[r] = col;
    ++r;
  }
  // free column -> kernel vector
  long free_col = -1;
  for (long c = 0; c < n; ++c)
    if (pivot_of_col[c] < 0) { free_col = c; break; }
  if (free_col < 0) return {};
  std::vector<PadicNum> y(n, PadicNum::zero(p, PadicNum::PREC_EXACT));
  y[free_col] = PadicNum::exact_int(p, 1);
  for (long i = r - 1; i >= 0; --i) {
    long col = col_of_row[i];
    PadicNum rhs = PadicNum::zero(p, PadicNum::PREC_EXACT);
    for (long c = col + 1; c < n; ++c) {
      if (y[c].is_zero() && y[c].abs_prec() >= PadicNum::PREC_EXACT / 2) continue;
      rhs -= T[i][c] * y[c];
    }
    y[col] = rhs / T[i][col];
  }
  return y;
}

}  // namespace ovc
