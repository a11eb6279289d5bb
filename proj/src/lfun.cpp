#include "overconv/lfun.hpp"

namespace ovc {

long BranchedDistribution::moment_precision() const {
  long lvl = nmom;
  for (const auto& [a, ms] : branches) {
    for (long j = 0; j < static_cast<long>(ms.size()); ++j) {
      long vb = ms[j].is_zero() ? ms[j].abs_prec() : ms[j].valuation();
      lvl = std::min(lvl, vb - depth * j + j);
    }
  }
  return lvl;
}

BranchedDistribution galois_evaluate(const DistModule& D, const ModularSymbol<DistModule>& Phi, long c) {
  if (c < 1) throw std::domain_error("galois_evaluate: conductor exponent must be >= 1");
  long p = D.prime();
  long pc = 1;
  for (long i = 0; i < c; ++i) pc *= p;

  BranchedDistribution L;
  L.p = p;
  L.depth = c;
  L.nmom = D.nmoments();
  for (long a = 1; a < pc; ++a) {
    if (a % p == 0) continue;
    auto terms = Phi.basis->path_to_inf(Int(a), Int(pc));
    auto V = eval_terms(D, Phi, terms);
    // m_{a,j} = p^{cj} * V_j
    std::vector<PadicNum> ms(D.nmoments(), PadicNum::zero(p, PadicNum::PREC_EXACT));
    PadicNum scale = PadicNum::exact_int(p, 1);
    PadicNum pcn = PadicNum::exact_int(p, pc);
    for (long j = 0; j < D.nmoments(); ++j) {
      ms[j] = scale * V[j];
      scale = scale * pcn;
    }
    L.branches[a] = std::move(ms);
  }
  return L;
}

BranchedDistribution build_lp(const RefinedEigenData& f, const DistModule& D,
                              const ModularSymbol<DistModule>& Phi, long c) {
  BranchedDistribution L = galois_evaluate(D, Phi, c);
  PadicNum scale = f.alpha.inverse().pow(c);
  for (auto& [a, ms] : L.branches)
    for (auto& m : ms) m = m * scale;
  L.slope = f.slope;
  L.alpha_power = c;
  return L;
}

BranchedDistribution coarsen(const BranchedDistribution& L) {
  if (L.depth < 2) throw std::domain_error("coarsen: depth must be >= 2");
  long p = L.p;
  long pc_fine = 1;
  for (long i = 0; i < L.depth; ++i) pc_fine *= p;
  long pc = pc_fine / p;

  BranchedDistribution out;
  out.p = p;
  out.depth = L.depth - 1;
  out.nmom = L.nmom;
  out.slope = L.slope;
  out.alpha_power = L.alpha_power;
  for (long a = 1; a < pc; ++a) {
    if (a % p == 0) continue;
    std::vector<PadicNum> ms(L.nmom, PadicNum::zero(p, PadicNum::PREC_EXACT));
    for (long t = 0; t < p; ++t) {
      long af = a + t * pc;
      const auto& fine = L.branches.at(af);
      // (y-a)^j = sum_i binom(j,i) (af-a)^{j-i} (y-af)^i
      for (long j = 0; j < L.nmom; ++j) {
        Int binom = 1;
        for (long i = j; i >= 0; --i) {
          // binom(j,i) computed incrementally from i=j downwards:
          // start binom(j,j)=1; binom(j,i-1) = binom(j,i)*i/(j-i+1)
          Int coef = binom * pow_int(Int(af - a), static_cast<unsigned long>(j - i));
          ms[j] += PadicNum::exact_int(p, coef) * fine[i];
          if (i > 0) binom = binom * i / (j - i + 1);
        }
      }
    }
    out.branches[a] = std::move(ms);
  }
  return out;
}

HorizontalReport horizontal_check(const DistModule& D, const ModularSymbol<DistModule>& Phi, long c) {
  HorizontalReport rep;
  rep.depth_fine = c + 1;
  BranchedDistribution fine = galois_evaluate(D, Phi, c + 1);
  BranchedDistribution lhs = coarsen(fine);

  HeckeOp Up = make_up(*Phi.basis, D.prime());
  auto UPhi = Up.apply(D, Phi, true);
  BranchedDistribution rhs = galois_evaluate(D, UPhi, c);

  long worst = PadicNum::PREC_EXACT;
  for (const auto& [a, ms] : lhs.branches) {
    const auto& ns = rhs.branches.at(a);
    for (long j = 0; j < lhs.nmom; ++j) {
      PadicNum diff = ms[j] - ns[j];
      long vb = diff.is_zero() ? diff.abs_prec() : diff.valuation();
      worst = std::min(worst, vb);
    }
  }
  rep.defect_valuation = worst;
  return rep;
}

namespace {

// uncentred moment: integral over the branch of y^j =
// sum_i binom(j,i) a^{j-i} m_{a,i}
PadicNum uncentred_moment(const BranchedDistribution& L, long a, long j) {
  const auto& ms = L.branches.at(a);
  if (j >= static_cast<long>(ms.size()))
    throw std::domain_error("evaluate_character: moment index beyond stored moments");
  PadicNum acc = PadicNum::zero(L.p, PadicNum::PREC_EXACT);
  Int binom = 1;
  for (long i = j; i >= 0; --i) {
    Int coef = binom * pow_int(Int(a), static_cast<unsigned long>(j - i));
    acc += PadicNum::exact_int(L.p, coef) * ms[i];
    if (i > 0) binom = binom * i / (j - i + 1);
  }
  return acc;
}

}  // namespace

PadicNum evaluate_character(const BranchedDistribution& L, const PadicCharacter& chi) {
  long m = chi.finite.m();
  if (m > L.depth)
    throw std::domain_error("evaluate_character: conductor deeper than the stored branches; "
                            "rebuild at depth >= " + std::to_string(m));
  PadicNum acc = PadicNum::zero(L.p, PadicNum::PREC_EXACT);
  long prec = L.nmom + 4;
  for (const auto& [a, ms] : L.branches) {
    PadicNum w = chi.finite.is_trivial() ? PadicNum::exact_int(L.p, 1)
                                         : chi.finite.value_padic(a, prec);
    acc += w * uncentred_moment(L, a, chi.j);
  }
  return acc;
}

CycloElt evaluate_character_cyclo(const BranchedDistribution& L, const PadicCharacter& chi,
                                  const CycloField& F) {
  long m = chi.finite.m();
  if (m > L.depth)
    throw std::domain_error("evaluate_character: conductor deeper than the stored branches");
  CycloElt acc = F.zero();
  long prec = L.nmom + 4;
  for (const auto& [a, ms] : L.branches) {
    CycloElt w = chi.finite.value(a, F, prec);
    acc = acc + w.scaled(uncentred_moment(L, a, chi.j));
  }
  return acc;
}

PadicNum interpolation_factor(const RefinedEigenData& f, const PadicCharacter& chi, long prec) {
  long k = f.base.k;
  long p = f.p;
  if (chi.j < 0 || chi.j > k)
    throw std::domain_error("interpolation_factor: non-critical character (j outside 0..k)");
  PadicNum one = PadicNum::exact_int(p, 1);
  PadicNum alpha_inv = f.alpha.inverse().truncate_abs(prec);
  long m = chi.finite.m();
  if (m == 0) {
    PadicNum pj = PadicNum(p, pow_int(p, static_cast<unsigned long>(chi.j)), PadicNum::PREC_EXACT);
    PadicNum first = one - pj * alpha_inv;
    if (f.p_divides_level) return first;
    PadicNum pkj = PadicNum(p, pow_int(p, static_cast<unsigned long>(k - chi.j)), PadicNum::PREC_EXACT);
    return first * (one - pkj * alpha_inv);
  }
  return alpha_inv.pow(m);
}

PadicNum ev_classical_padic(const RatPolyModule& M, const ModularSymbol<RatPolyModule>& phi,
                            const PadicCharacter& chi, long p, long prec) {
  long c = chi.finite.is_trivial() ? 1 : chi.finite.modulus();
  auto prof = ev_profile(M, phi, c);
  PadicNum acc = PadicNum::zero(p, PadicNum::PREC_EXACT);
  for (long a = 0; a < c; ++a) {
    Rat q = ev_twisted(prof[a], a, c, chi.j);
    if (chi.finite.is_trivial()) {
      acc += PadicNum(p, q, prec);
    } else {
      PadicNum w = chi.finite.value_padic(a, prec);
      acc += w * PadicNum(p, q, prec);
    }
  }
  return acc;
}

CycloElt ev_classical_cyclo(const RatPolyModule& M, const ModularSymbol<RatPolyModule>& phi,
                            const PadicCharacter& chi, const CycloField& F, long prec) {
  long c = chi.finite.modulus();
  auto prof = ev_profile(M, phi, c);
  CycloElt acc = F.zero();
  for (long a = 0; a < c; ++a) {
    Rat q = ev_twisted(prof[a], a, c, chi.j);
    CycloElt w = chi.finite.value(a, F, prec);
    acc = acc + w.scaled(PadicNum(F.p(), q, prec));
  }
  return acc;
}

MellinSeries mellin(const BranchedDistribution& L, long omega_power, long T_prec) {
  if (L.depth != 1)
    throw std::domain_error("mellin: expected a depth-1 branch decomposition");
  long p = L.p;
  long prec = L.nmom + 2;
  MellinSeries out;
  out.branch = ((omega_power % (p - 1)) + (p - 1)) % (p - 1);
  out.coeffs.assign(T_prec, PadicNum::zero(p, PadicNum::PREC_EXACT));

  PadicNum lam = padic_log(PadicNum(p, Int(1 + p), prec + 2));  // log(1+p)
  for (const auto& [a, ms] : L.branches) {
    // L_a(y) = (log<a> + log(1 + (y-a)/a)) / log(1+p) as a series in (y-a)
    std::vector<PadicNum> La(L.nmom, PadicNum::zero(p, prec));
    PadicNum om = teichmuller(Int(a), p, prec + 2);
    La[0] = padic_log(PadicNum(p, Int(a), prec + 2) * om.inverse()) / lam;
    PadicNum ainv = PadicNum(p, Int(a), prec + 2).inverse();
    PadicNum pw = ainv;
    for (long s = 1; s < L.nmom; ++s) {
      // coefficient of (y-a)^s in log(1+(y-a)/a): (-1)^{s+1} a^{-s}/s
      PadicNum cs = pw / PadicNum::exact_int(p, s);
      if (s % 2 == 0) cs = -cs;
      La[s] = cs / lam;
      pw = pw * ainv;
    }
    // binom(L_a, n) as series, built by multiplying (L_a - t)/(t+1)
    std::vector<PadicNum> cur(L.nmom, PadicNum::zero(p, prec + 2));
    cur[0] = PadicNum::exact_int(p, 1);  // binom(., 0) = 1
    PadicNum wa = om.pow(omega_power);
    for (long n = 0; n < T_prec; ++n) {
      // c_n contribution: omega(a)^i * sum_s cur[s] m_{a,s}
      PadicNum acc = PadicNum::zero(p, PadicNum::PREC_EXACT);
      for (long s = 0; s < L.nmom; ++s) acc += cur[s] * ms[s];
      out.coeffs[n] += wa * acc;
      if (n + 1 >= T_prec) break;
      // cur <- cur * (L_a - n) / (n+1)
      std::vector<PadicNum> nxt(L.nmom, PadicNum::zero(p, prec + 2));
      for (long s = 0; s < L.nmom; ++s) {
        if (cur[s].is_zero() && cur[s].abs_prec() >= prec) continue;
        for (long t = 0; s + t < L.nmom; ++t) nxt[s + t] += cur[s] * La[t];
      }
      PadicNum nn = PadicNum::exact_int(p, n);
      PadicNum inv = PadicNum::exact_int(p, n + 1).inverse();
      for (long s = 0; s < L.nmom; ++s) nxt[s] = (nxt[s] - nn * cur[s]) * inv;
      cur = std::move(nxt);
    }
  }
  return out;
}

AdmissibilityReport admissibility_check(const BranchedDistribution& L, const Rat& h) {
  AdmissibilityReport rep;
  // ceil(h * depth)
  Int num = numerator(h) * L.depth, den = denominator(h);
  long ceil_hc = static_cast<long>((num + den - 1) / den);
  rep.order_ceiling = ceil_hc;
  for (const auto& [a, ms] : L.branches) {
    for (long j = 0; j < static_cast<long>(ms.size()); ++j) {
      long bound = L.depth * j - ceil_hc;
      long vb = ms[j].is_zero() ? ms[j].abs_prec() : ms[j].valuation();
      if (vb < bound) {
        rep.pass = false;
        rep.violations.emplace_back(a, j, bound, vb);
      }
    }
  }
  return rep;
}

}  // namespace ovc
