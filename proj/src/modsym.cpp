#include "overconv/modsym.hpp"

#include "overconv/linalg.hpp"

#include <algorithm>
#include <numeric>

namespace ovc {

static long gcd3(long a, long b, long c) { return gcd_l(gcd_l(a, b), c); }

ManinBasis::ManinBasis(long level) : level_(level) {
  if (level < 1) throw std::domain_error("ManinBasis: level must be positive");
  build();
}

std::pair<long, long> ManinBasis::normalize(long c, long d) const {
  long M = level_;
  if (M == 1) return {0, 1};
  c = ((c % M) + M) % M;
  d = ((d % M) + M) % M;
  if (gcd3(c, d, M) != 1) throw std::domain_error("ManinBasis: (c:d) not in P^1(Z/M)");
  if (c == 0) return {0, 1};
  long g = gcd_l(c, M);
  long M1 = M / g;
  // s with s*c = g mod M, adjusted to a unit mod M
  long c1 = (c / g) % M1;
  long s = static_cast<long>(inv_mod(c1, M1));
  while (gcd_l(s, M) != 1) s += M1;
  long d2 = static_cast<long>(mul_mod(s, d, M));
  // remaining freedom: units w = 1 + k*M1; take the least d representative
  long best = -1;
  for (long k = 0; k < g; ++k) {
    long w = (1 + k * M1) % M;
    if (gcd_l(w, M) != 1) continue;
    long cand = static_cast<long>(mul_mod(w, d2, M));
    if (best < 0 || cand < best) best = cand;
  }
  return {g, best};
}

long ManinBasis::index(long c, long d) const {
  auto key = normalize(c, d);
  auto it = index_.find(key);
  if (it == index_.end()) throw std::logic_error("ManinBasis: coset not found");
  return it->second;
}

// lift representative (c:d) mod M to a matrix in SL_2(Z) with bottom row
// congruent to (c,d)
static Mat22 lift_to_sl2(long c, long d, long M) {
  if (M == 1) return {1, 0, 0, 1};
  c %= M;
  d %= M;
  if (c == 0) return {1, 0, 0, 1};  // (0:1) -> identity
  long cc = c, dd = d;
  for (long t = 0; t <= M + 1; ++t) {
    dd = d + t * M;
    if (dd != 0 && gcd_l(cc, dd) == 1) break;
  }
  if (gcd_l(cc, dd) != 1) throw std::logic_error("lift_to_sl2: no coprime lift found");
  // a*dd - b*cc = 1
  long a = 0, b = 0;
  {
    long x0 = 1, y0 = 0, x1 = 0, y1 = 1, r0 = dd, r1 = cc;
    while (r1 != 0) {
      long q = r0 / r1;
      std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
      std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
      std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    // r0 = gcd = +-1 = x0*dd + y0*cc
    if (r0 == 1) {
      a = x0;
      b = -y0;
    } else {
      a = -x0;
      b = y0;
    }
  }
  Mat22 m{a, b, cc, dd};
  if (m.det() != 1) throw std::logic_error("lift_to_sl2: determinant error");
  return m;
}

void ManinBasis::build() {
  long M = level_;
  // enumerate P^1(Z/M)
  if (M == 1) {
    reps_.push_back({1, 0, 0, 1});
    index_[{0, 1}] = 0;
  } else {
    for (long c = 0; c < M; ++c) {
      for (long d = 0; d < M; ++d) {
        if (gcd3(c, d, M) != 1) continue;
        auto key = normalize(c, d);
        if (index_.count(key)) continue;
        long idx = static_cast<long>(reps_.size());
        index_[key] = idx;
        reps_.push_back(lift_to_sl2(key.first, key.second, M));
      }
    }
  }

  const Mat22 sigma{0, -1, 1, 0};
  const Mat22 tau{0, -1, 1, -1};

  // two-term relations: phi(D_g) + phi(D_{g sigma}) = 0
  std::vector<bool> done(reps_.size(), false);
  for (long x = 0; x < ncosets(); ++x) {
    if (done[x]) continue;
    Mat22 u = reps_[x] * sigma;
    long y = index_of(u);
    Rel2 rel;
    rel.x = x;
    rel.other = {y, reps_[y] * sl2_inv(u)};
    rel2_.push_back(rel);
    done[x] = true;
    done[y] = true;
  }
  // three-term relations: phi(D_g) + phi(D_{g tau}) + phi(D_{g tau^2}) = 0
  std::fill(done.begin(), done.end(), false);
  for (long x = 0; x < ncosets(); ++x) {
    if (done[x]) continue;
    Mat22 u1 = reps_[x] * tau;
    Mat22 u2 = u1 * tau;
    long y = index_of(u1), z = index_of(u2);
    Rel3 rel;
    rel.x = x;
    rel.second = {y, reps_[y] * sl2_inv(u1)};
    rel.third = {z, reps_[z] * sl2_inv(u2)};
    rel3_.push_back(rel);
    done[x] = true;
    done[y] = true;
    done[z] = true;
  }
}

// continued-fraction decomposition of {infinity -> n/d} into unimodular
// paths {h_{i-1}/k_{i-1} -> h_i/k_i} through the convergents of n/d
static std::vector<Mat22> cf_matrices(Int n, Int d) {
  std::vector<Mat22> out;
  if (d == 0) return out;  // {inf -> inf}
  if (d < 0) { n = -n; d = -d; }
  Int h2 = 0, k2 = 1;  // h_{i-2}/k_{i-2}
  Int h1 = 1, k1 = 0;  // h_{i-1}/k_{i-1}, starting at infinity
  Int a = n, b = d;
  int i = 0;
  while (b != 0) {
    Int q = (a - mod_pos(a, b)) / b;  // floor
    Int r = a - q * b;
    Int h = q * h1 + h2, k = q * k1 + k2;
    // segment {h1/k1 -> h/k}; h k1 - h1 k = (-1)^{i+1}
    long e = (i % 2 == 0) ? -1 : 1;
    Mat22 m{static_cast<long>(h), static_cast<long>(e * h1), static_cast<long>(k),
            static_cast<long>(e * k1)};
    if (m.det() != 1) throw std::logic_error("cf_matrices: non-unimodular segment");
    out.push_back(m);
    h2 = h1; k2 = k1; h1 = h; k1 = k;
    a = b;
    b = r;
    ++i;
  }
  return out;
}

std::vector<ManinBasis::PathTerm> ManinBasis::path_to_inf(const Int& num, const Int& den) const {
  // {num/den -> inf} = - {inf -> num/den}
  std::vector<PathTerm> out;
  for (const Mat22& u : cf_matrices(num, den)) {
    long c = index_of(u);
    out.push_back({-1, c, reps_[c] * sl2_inv(u)});
  }
  return out;
}

std::vector<ManinBasis::PathTerm> ManinBasis::path(const Rat& from, bool from_inf, const Rat& to,
                                                   bool to_inf) const {
  std::vector<PathTerm> out;
  // {from -> to} = {inf -> to} - {inf -> from}
  if (!to_inf) {
    for (const Mat22& u : cf_matrices(numerator(to), denominator(to))) {
      long c = index_of(u);
      out.push_back({+1, c, reps_[c] * sl2_inv(u)});
    }
  }
  if (!from_inf) {
    for (const Mat22& u : cf_matrices(numerator(from), denominator(from))) {
      long c = index_of(u);
      out.push_back({-1, c, reps_[c] * sl2_inv(u)});
    }
  }
  return out;
}

// ---------------------------------------------------------------------
// Hecke operators

HeckeOp::HeckeOp(const ManinBasis& B, std::vector<Mat22> coset_mats, std::string name)
    : basis_(B), mats_(std::move(coset_mats)), name_(std::move(name)) {
  terms_.resize(B.ncosets());
  for (long i = 0; i < B.ncosets(); ++i) {
    for (const Mat22& delta : mats_) {
      Mat22 m = delta * B.rep(i);
      // path {m.0 -> m.inf} = {b/d -> a/c}
      auto terms = B.path(Rat(Int(m.b), Int(m.d == 0 ? 1 : m.d)), m.d == 0,
                          Rat(Int(m.a), Int(m.c == 0 ? 1 : m.c)), m.c == 0);
      for (auto& t : terms) {
        t.twist = t.twist * delta;
        terms_[i].push_back(t);
      }
    }
  }
}

std::vector<Mat22> HeckeOp::action_matrices() const {
  std::vector<Mat22> out;
  for (const auto& tl : terms_)
    for (const auto& t : tl) out.push_back(t.twist);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

HeckeOp make_tell(const ManinBasis& B, long ell) {
  if (B.level() % ell == 0)
    throw std::domain_error("make_tell: ell divides the level; use make_up");
  std::vector<Mat22> mats;
  for (long a = 0; a < ell; ++a) mats.push_back({1, a, 0, ell});
  mats.push_back({ell, 0, 0, 1});
  return HeckeOp(B, mats, "T" + std::to_string(ell));
}

HeckeOp make_up(const ManinBasis& B, long p) {
  if (B.level() % p != 0)
    throw std::domain_error("make_up: p must divide the level");
  std::vector<Mat22> mats;
  for (long a = 0; a < p; ++a) mats.push_back({1, a, 0, p});
  return HeckeOp(B, mats, "U" + std::to_string(p));
}

HeckeOp make_involution(const ManinBasis& B) { return HeckeOp(B, {Mat22{-1, 0, 0, 1}}, "iota"); }

// ---------------------------------------------------------------------
// relations

template <class Module>
static typename Module::Value relation2_defect(const Module& M, const ModularSymbol<Module>& phi,
                                               const ManinBasis::Rel2& r) {
  return M.add(phi.values[r.x], M.act(phi.values[r.other.coset], r.other.twist));
}

template <class Module>
static typename Module::Value relation3_defect(const Module& M, const ModularSymbol<Module>& phi,
                                               const ManinBasis::Rel3& r) {
  auto v = M.add(phi.values[r.x], M.act(phi.values[r.second.coset], r.second.twist));
  return M.add(v, M.act(phi.values[r.third.coset], r.third.twist));
}

template <class Module>
bool check_relations_exact(const Module& M, const ModularSymbol<Module>& phi) {
  for (const auto& r : phi.basis->two_term())
    if (!M.is_zero(relation2_defect(M, phi, r))) return false;
  for (const auto& r : phi.basis->three_term())
    if (!M.is_zero(relation3_defect(M, phi, r))) return false;
  return true;
}

template bool check_relations_exact<RatPolyModule>(const RatPolyModule&, const ModularSymbol<RatPolyModule>&);

long check_relations_valuation(const DistModule& M, const ModularSymbol<DistModule>& phi) {
  long worst = PadicNum::PREC_EXACT;
  for (const auto& r : phi.basis->two_term())
    worst = std::min(worst, M.fil_level(relation2_defect(M, phi, r)));
  for (const auto& r : phi.basis->three_term())
    worst = std::min(worst, M.fil_level(relation3_defect(M, phi, r)));
  return worst;
}

long check_relations_valuation(const PadicPolyModule& M, const ModularSymbol<PadicPolyModule>& phi) {
  long worst = PadicNum::PREC_EXACT;
  for (const auto& r : phi.basis->two_term())
    worst = std::min(worst, M.defect_valuation(relation2_defect(M, phi, r)));
  for (const auto& r : phi.basis->three_term())
    worst = std::min(worst, M.defect_valuation(relation3_defect(M, phi, r)));
  return worst;
}

// ---------------------------------------------------------------------
// rational eigensymbols

namespace {

// add coeff * (value at coset |g) to the row block starting at base_row
void add_act_rows(const RatPolyModule& M, std::vector<std::vector<Rat>>& rows, long base_row,
                  long coset, const Mat22& g, const Rat& coeff, long /*ncosets*/) {
  const auto& T = M.table(g);
  long d = M.dim();
  for (long j = 0; j < d; ++j)
    for (long i = 0; i < d; ++i)
      if (T[j][i] != 0) rows[base_row + j][coset * d + i] += coeff * Rat(T[j][i]);
}

}  // namespace

EigenSolveResult eigen_solve(const ManinBasis& B, const EigenDataView& f, int sign) {
  RatPolyModule M(f.k);
  long n = B.ncosets(), d = f.k + 1;
  long cols = n * d;

  std::vector<std::vector<Rat>> rows;
  auto new_rows = [&](long count) {
    size_t base = rows.size();
    rows.resize(base + count, std::vector<Rat>(cols, Rat(0)));
    return static_cast<long>(base);
  };

  // Manin relations
  for (const auto& r : B.two_term()) {
    long base = new_rows(d);
    for (long j = 0; j < d; ++j) rows[base + j][r.x * d + j] += 1;
    add_act_rows(M, rows, base, r.other.coset, r.other.twist, Rat(1), n);
  }
  for (const auto& r : B.three_term()) {
    long base = new_rows(d);
    for (long j = 0; j < d; ++j) rows[base + j][r.x * d + j] += 1;
    add_act_rows(M, rows, base, r.second.coset, r.second.twist, Rat(1), n);
    add_act_rows(M, rows, base, r.third.coset, r.third.twist, Rat(1), n);
  }
  long relation_rows = static_cast<long>(rows.size());

  // sign condition: iota(phi) = sign * phi
  HeckeOp iota = make_involution(B);
  {
    // (iota phi)_i - sign*phi_i = 0 for every coset
    for (long i = 0; i < n; ++i) {
      long base = new_rows(d);
      for (long j = 0; j < d; ++j) rows[base + j][i * d + j] -= Rat(sign);
      // iota terms for coset i
      // reconstruct from operator application on basis vectors: use terms
      // exposed via apply on indicator symbols would be wasteful; rebuild:
      Mat22 eta{-1, 0, 0, 1};
      Mat22 m = eta * B.rep(i);
      auto terms = B.path(Rat(Int(m.b), Int(m.d == 0 ? 1 : m.d)), m.d == 0,
                          Rat(Int(m.a), Int(m.c == 0 ? 1 : m.c)), m.c == 0);
      for (auto& t : terms) add_act_rows(M, rows, base, t.coset, t.twist * eta, Rat(t.sign), n);
    }
  }

  EigenSolveResult res;

  // Hecke conditions, added until the nullspace is a line
  std::vector<std::vector<Rat>> kernel;
  for (long ell = 2;; ++ell) {
    if (!is_prime(ell) || B.level() % ell == 0) continue;
    Rat aell = f.a(ell);
    for (long i = 0; i < n; ++i) {
      long base = new_rows(d);
      for (long j = 0; j < d; ++j) rows[base + j][i * d + j] -= aell;
      for (long a = 0; a < ell; ++a) {
        Mat22 delta{1, a, 0, ell};
        Mat22 m = delta * B.rep(i);
        auto terms = B.path(Rat(Int(m.b), Int(m.d == 0 ? 1 : m.d)), m.d == 0,
                            Rat(Int(m.a), Int(m.c == 0 ? 1 : m.c)), m.c == 0);
        for (auto& t : terms) add_act_rows(M, rows, base, t.coset, t.twist * delta, Rat(t.sign), n);
      }
      Mat22 delta{ell, 0, 0, 1};
      Mat22 m = delta * B.rep(i);
      auto terms = B.path(Rat(Int(m.b), Int(m.d == 0 ? 1 : m.d)), m.d == 0,
                          Rat(Int(m.a), Int(m.c == 0 ? 1 : m.c)), m.c == 0);
      for (auto& t : terms) add_act_rows(M, rows, base, t.coset, t.twist * delta, Rat(t.sign), n);
    }
    res.hecke_used.push_back(ell);
    kernel = nullspace(rows);
    if (kernel.size() <= 1) break;
    if (ell > 20)
      throw std::runtime_error("eigen_solve: eigenspace still " + std::to_string(kernel.size()) +
                               "-dimensional after T_ell constraints up to 20");
  }
  res.eigenspace_dim = static_cast<long>(kernel.size());
  if (kernel.empty())
    throw std::runtime_error("eigen_solve: eigen system has no solution (data error?)");

  // content-1 normalisation with positive leading entry
  std::vector<Rat>& v = kernel[0];
  Int lcm_den = 1;
  for (const auto& q : v)
    if (q != 0) lcm_den = lcm(lcm_den, denominator(q));
  Int gcd_num = 0;
  for (const auto& q : v)
    if (q != 0) gcd_num = gcd(gcd_num, Int(numerator(q) * (lcm_den / denominator(q))));
  Rat scale = (gcd_num == 0) ? Rat(1) : Rat(lcm_den, gcd_num);
  for (auto& q : v) q *= scale;
  for (const auto& q : v) {
    if (q != 0) {
      if (q < 0)
        for (auto& w : v) w = -w;
      break;
    }
  }

  res.symbol.basis = &B;
  res.symbol.values.assign(n, M.zero());
  for (long i = 0; i < n; ++i)
    for (long j = 0; j < d; ++j) res.symbol.values[i][j] = v[i * d + j];

  // relation nullity for reporting
  {
    std::vector<std::vector<Rat>> rel(rows.begin(), rows.begin() + relation_rows);
    res.relation_nullity = static_cast<long>(nullspace(rel).size());
  }
  return res;
}

std::vector<std::vector<Rat>> ev_profile(const RatPolyModule& M, const ModularSymbol<RatPolyModule>& phi,
                                         long c) {
  std::vector<std::vector<Rat>> out;
  for (long a = 0; a < c; ++a) {
    auto terms = phi.basis->path(Rat(Int(a), Int(c)), false, Rat(0), true);
    out.push_back(eval_terms(M, phi, terms));
  }
  return out;
}

Rat ev_twisted(const std::vector<Rat>& value, long a, long c, long j) {
  // (value | [[1,a],[0,c]]) at x^j = value((a+cx)^j)
  Rat acc = 0;
  Int binom = 1;
  for (long i = 0; i <= j && i < static_cast<long>(value.size()); ++i) {
    // binom(j,i) a^{j-i} c^i
    Int coef = binom * pow_int(Int(a), static_cast<unsigned long>(j - i)) *
               pow_int(Int(c), static_cast<unsigned long>(i));
    acc += Rat(coef) * value[i];
    binom = binom * (j - i) / (i + 1);
  }
  return acc;
}

}  // namespace ovc
