#include "overconv/eigendata.hpp"

#include <array>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "httplib.h"
#include "json.hpp"

namespace ovc {

using nlohmann::json;

Rat EigenData::a(long ell) const {
  auto it = hecke.find(ell);
  if (it == hecke.end())
    throw std::out_of_range("EigenData: a_" + std::to_string(ell) + " not available for " + label);
  return it->second;
}

long EigenData::neben(long n) const {
  if (gcd_l(n, level) != 1) return 0;
  if (neben_disc == 1) return 1;
  return kronecker(neben_disc, n);
}

void EigenData::check_ramanujan() const {
  for (const auto& [ell, aell] : hecke) {
    double bound = 2.0 * std::pow(static_cast<double>(ell), (k + 1) / 2.0) + 0.5;
    double val = std::abs(static_cast<double>(numerator(aell)) / static_cast<double>(denominator(aell)));
    if (val > bound)
      throw std::domain_error("EigenData: |a_" + std::to_string(ell) + "| violates the Ramanujan bound");
  }
}

// ---------------------------------------------------------------------
// point counting

static long count_points(const std::array<long, 5>& a, long ell) {
  // points of y^2 + a1 x y + a3 y = x^3 + a2 x^2 + a4 x + a6 over F_ell
  auto md = [ell](long v) { return ((v % ell) + ell) % ell; };
  long cnt = 1;  // infinity
  for (long x = 0; x < ell; ++x) {
    long rhs = md(md(md(x * x) * x) + md(a[1] * md(x * x)) + md(a[3] * x) + a[4]);
    long lin = md(a[0] * x + a[2]);
    for (long y = 0; y < ell; ++y)
      if (md(y * y + lin * y - rhs) == 0) ++cnt;
  }
  return cnt;
}

static Int curve_discriminant(const std::array<long, 5>& a) {
  Int a1 = a[0], a2 = a[1], a3 = a[2], a4 = a[3], a6 = a[4];
  Int b2 = a1 * a1 + 4 * a2;
  Int b4 = 2 * a4 + a1 * a3;
  Int b6 = a3 * a3 + 4 * a6;
  Int b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  return -b2 * b2 * b8 - 8 * b4 * b4 * b4 - 27 * b6 * b6 + 9 * b2 * b4 * b6;
}

// a_ell at a bad prime: 0 additive, +1 split multiplicative, -1 non-split
static long bad_prime_ap(const std::array<long, 5>& a, long ell) {
  auto md = [ell](long v) { return ((v % ell) + ell) % ell; };
  // locate the singular point mod ell
  for (long x = 0; x < ell; ++x) {
    for (long y = 0; y < ell; ++y) {
      long f = md(y * y + a[0] * x * y + a[2] * y - md(md(x * x) * x) - a[1] * md(x * x) - a[3] * x - a[4]);
      if (f != 0) continue;
      long fx = md(a[0] * y - 3 * md(x * x) - 2 * a[1] * x - a[3]);
      long fy = md(2 * y + a[0] * x + a[2]);
      if (fx == 0 && fy == 0) {
        // tangent directions at (x0,y0): t^2 + a1 t - (3 x0 + a2) = 0,
        // t = Y/X; node is split iff the discriminant is a square mod ell
        long disc = md(a[0] * a[0] + 4 * (3 * x + a[1]));
        if (disc == 0) return 0;
        return kronecker(disc, ell) == 1 ? 1 : -1;
      }
    }
  }
  throw std::logic_error("bad_prime_ap: no singular point found");
}

EigenData point_count_eigendata(const std::array<long, 5>& ainv, long B, const std::string& label) {
  Int disc = curve_discriminant(ainv);
  if (disc == 0) throw std::domain_error("point_count_eigendata: singular Weierstrass model");
  EigenData f;
  f.label = label.empty() ? "curve" : label;
  f.k = 0;
  // conductor: for the built-in curves the discriminant is a prime power
  // times units; we set level = product of bad primes to the first power,
  // which is correct for the squarefree-conductor curves used here.
  long lvl = 1;
  for (long ell = 2; ell < 1000; ++ell) {
    if (!is_prime(ell)) continue;
    if (disc % ell == 0) lvl *= ell;
  }
  f.level = lvl;
  for (long ell : primes_up_to(B)) {
    if (disc % ell != 0) {
      f.hecke[ell] = Rat(ell + 1 - count_points(ainv, ell));
    } else {
      f.hecke[ell] = Rat(bad_prime_ap(ainv, ell));
    }
  }
  f.source = "point-count";
  f.check_ramanujan();
  return f;
}

// ---------------------------------------------------------------------
// Delta

EigenData delta_eigendata(long B) {
  // q-expansion of Delta = q prod_{n>=1} (1 - q^n)^24 up to q^B
  long n = B + 1;
  std::vector<Int> poly(n, 0);
  poly[0] = 1;
  for (long m = 1; m < n; ++m) {
    // multiply by (1 - q^m)^24
    for (int rep = 0; rep < 24; ++rep) {
      for (long i = n - 1; i >= m; --i) poly[i] -= poly[i - m];
    }
  }
  EigenData f;
  f.label = "1.12.a.a";
  f.level = 1;
  f.k = 10;
  for (long ell : primes_up_to(B)) {
    if (ell < n) f.hecke[ell] = Rat(poly[ell - 1]);  // tau(ell) = coeff of q^ell in q*prod
  }
  f.source = "delta-qexp";
  f.check_ramanujan();
  return f;
}

// ---------------------------------------------------------------------
// built-in labels and LMFDB access

static std::optional<std::array<long, 5>> curve_by_label(const std::string& label) {
  if (label == "11a1" || label == "11.a2" || label == "11.2.a.a") return std::array<long, 5>{0, -1, 1, -10, -20};
  if (label == "37a1" || label == "37.a1") return std::array<long, 5>{0, 0, 1, -1, 0};
  return std::nullopt;
}

EigenData builtin_eigendata(const std::string& label, long B) {
  if (label == "1.12.a.a" || label == "delta") return delta_eigendata(B);
  if (auto c = curve_by_label(label)) {
    EigenData f = point_count_eigendata(*c, B, label);
    return f;
  }
  throw std::out_of_range("builtin_eigendata: unknown label " + label);
}

static std::string cache_dir() {
  const char* c = std::getenv("OVERCONV_CACHE");
  if (c && *c) return c;
  return "./.overconv_cache";
}

static std::string cache_path(const std::string& label, long B) {
  return cache_dir() + "/newform_" + label + "_B" + std::to_string(B) + ".json";
}

static EigenData eigendata_from_json(const json& j) {
  EigenData f;
  f.label = j.at("label").get<std::string>();
  f.level = j.at("level").get<long>();
  f.k = j.at("weight").get<long>() - 2;
  if (j.contains("char") && !j.at("char").is_null() && j.at("char").get<long>() != 1)
    throw std::domain_error("fetch_lmfdb: only trivial nebentypus is supported");
  for (auto it = j.at("an").begin(); it != j.at("an").end(); ++it) {
    long ell = std::stol(it.key());
    if (it.value().is_number_integer())
      f.hecke[ell] = Rat(it.value().get<long>());
    else
      throw std::domain_error("fetch_lmfdb: non-rational Hecke field beyond supported degree");
  }
  f.source = j.value("source", "lmfdb");
  f.fetched_at = j.value("fetched_at", "");
  return f;
}

static json eigendata_to_json(const EigenData& f) {
  json j;
  j["label"] = f.label;
  j["level"] = f.level;
  j["weight"] = f.k + 2;
  j["char"] = 1;
  json an = json::object();
  for (const auto& [ell, aell] : f.hecke) {
    if (denominator(aell) != 1) throw std::logic_error("eigendata_to_json: non-integral a_ell");
    an[std::to_string(ell)] = static_cast<long>(numerator(aell));
  }
  j["an"] = an;
  j["source"] = f.source;
  j["fetched_at"] = f.fetched_at;
  return j;
}

EigenData fetch_lmfdb(const std::string& label, long B) {
  namespace fs = std::filesystem;
  std::string path = cache_path(label, B);
  if (fs::exists(path)) {
    std::ifstream in(path);
    json j;
    in >> j;
    EigenData f = eigendata_from_json(j);
    f.source = "cache";
    return f;
  }

  const char* base = std::getenv("OVERCONV_LMFDB_URL");
  std::string base_url = (base && *base) ? base : "http://www.lmfdb.org";
  // split scheme://host[:port] from path prefix
  std::string host = base_url, prefix;
  auto scheme = host.find("://");
  if (scheme != std::string::npos) host = host.substr(scheme + 3);
  auto slash = host.find('/');
  if (slash != std::string::npos) {
    prefix = host.substr(slash);
    host = host.substr(0, slash);
  }
  httplib::Client cli(host);
  cli.set_connection_timeout(10);
  std::string url = prefix + "/api/mf_newforms/?label=" + label + "&_format=json";
  auto res = cli.Get(url.c_str());
  if (!res || res->status != 200)
    throw std::runtime_error("fetch_lmfdb: retrieval failed for " + label + " and no cache entry");
  json body = json::parse(res->body);
  json rec;
  if (body.contains("data") && body["data"].is_array() && !body["data"].empty())
    rec = body["data"][0];
  else if (body.contains("label"))
    rec = body;
  else
    throw std::runtime_error("fetch_lmfdb: label not found: " + label);

  EigenData f;
  if (rec.contains("an") || rec.contains("weight")) {
    // our canned-server schema: {label, level, weight, char, an, ...}
    f = eigendata_from_json(rec);
  } else {
    throw std::runtime_error("fetch_lmfdb: unsupported response shape");
  }
  f.source = base_url;
  f.fetched_at = res->has_header("Date") ? res->get_header_value("Date") : "unknown";
  if (f.label.empty()) f.label = label;

  // atomic write-then-rename so concurrent fetches are safe
  fs::create_directories(cache_dir());
  std::string tmp = path + ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    out << eigendata_to_json(f).dump(1) << "\n";
  }
  fs::rename(tmp, path);
  return f;
}

// ---------------------------------------------------------------------

EigenData twist(const EigenData& f, long D) {
  if (D == 1) return f;
  long absD = D < 0 ? -D : D;
  // primes shared with the level are only tolerated where a_q is already 0
  // (so the twisted eigenvalue system is still well defined)
  for (long q = 2; q <= absD; ++q) {
    if (!is_prime(q) || absD % q != 0 || f.level % q != 0) continue;
    if (!f.has(q) || f.a(q) != 0)
      throw std::domain_error("twist: discriminant not coprime to the level");
  }
  EigenData g = f;
  g.label = f.label + "x" + std::to_string(D);
  g.level = f.level * absD * absD;
  // nebentypus is multiplied by chi_D^2 = trivial away from D
  for (auto& [ell, aell] : g.hecke) aell *= kronecker(D, ell);
  g.source = f.source;
  return g;
}

std::vector<RefinedEigenData> stabilize(const EigenData& f, long p, long N) {
  if (p < 3 || !is_prime(p)) throw std::domain_error("stabilize: p must be an odd prime");
  std::vector<RefinedEigenData> out;
  Rat ap = f.a(p);
  if (f.level % p == 0) {
    RefinedEigenData r;
    r.base = f;
    r.p = p;
    r.alpha = PadicNum(p, ap, N);
    if (r.alpha.is_zero()) throw std::domain_error("stabilize: a_p = 0 at a bad prime");
    r.slope = Rat(r.alpha.valuation());
    r.refined_level = f.level;
    r.p_divides_level = true;
    out.push_back(r);
    return out;
  }
  // roots of X^2 - a_p X + eps(p) p^{k+1}
  long guard = static_cast<long>(f.k) + 3;
  std::vector<PadicNum> cs = {PadicNum(p, Rat(f.neben(p)) * pow_int(p, f.k + 1), PadicNum::PREC_EXACT),
                              PadicNum(p, -ap, PadicNum::PREC_EXACT),
                              PadicNum::exact_int(p, 1)};
  PadicPoly hecke_poly(cs);
  std::vector<PadicNum> roots;
  try {
    roots = hensel_roots(hecke_poly, p, N + guard);
  } catch (const std::domain_error& e) {
    throw std::domain_error(std::string("stabilize: non-separable refinement: ") + e.what());
  }
  for (const auto& alpha : roots) {
    RefinedEigenData r;
    r.base = f;
    r.p = p;
    r.alpha = alpha.truncate_abs(N + alpha.valuation());
    r.slope = Rat(alpha.valuation());
    r.refined_level = f.level * p;
    r.p_divides_level = false;
    out.push_back(r);
  }
  if (out.size() != 2) throw std::domain_error("stabilize: expected two refinements");
  if (out[0].slope > out[1].slope) std::swap(out[0], out[1]);
  return out;
}

RefinedEigenData small_slope_refinement(const EigenData& f, long p, long N) {
  auto refs = stabilize(f, p, N);
  return refs.front();
}

}  // namespace ovc
