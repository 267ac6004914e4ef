#include "arithdyn/prep.hpp"

#include "arithdyn/heights.hpp"
#include "arithdyn/roots.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

namespace adyn {

namespace {

// Only the constant coefficient lies outside the unit disk at p.
bool only_constant_large(const MonicPoly& g, std::uint64_t p) {
  const auto& b = g.lower();
  if (b[0].is_zero() || valuation(b[0], p) >= 0) return false;
  for (size_t j = 1; j < b.size(); ++j)
    if (!b[j].is_zero() && valuation(b[j], p) < 0) return false;
  return true;
}

// Points within tol of each other, indexed by real part.
class PointSet {
 public:
  explicit PointSet(double tol) : tol_(tol) {}
  long find(cplx z) const {
    for (auto it = by_re_.lower_bound(z.real() - tol_); it != by_re_.end() && it->first <= z.real() + tol_; ++it)
      if (std::abs(pts_[static_cast<size_t>(it->second)].z - z) <= tol_) return it->second;
    return -1;
  }
  bool insert(const PrepCluster& c) {
    if (find(c.z) >= 0) return false;
    by_re_.emplace(c.z.real(), static_cast<long>(pts_.size()));
    pts_.push_back(c);
    return true;
  }
  const std::vector<PrepCluster>& points() const { return pts_; }

 private:
  double tol_;
  std::multimap<double, long> by_re_;
  std::vector<PrepCluster> pts_;
};

int effective_cap(int d, int m_cap, long budget) {
  int m = 0;
  double deg = 1;
  while (m < m_cap && deg * d <= static_cast<double>(budget)) {
    deg *= d;
    ++m;
  }
  return m;
}

}  // namespace

std::optional<PlaceQ> disjoint_certificate(const MonicPoly& f, const MonicPoly& g) {
  std::set<std::uint64_t> primes;
  for (auto p : f.denominator_primes()) primes.insert(p);
  for (auto p : g.denominator_primes()) primes.insert(p);
  for (auto p : primes) {
    if ((explicit_good(f, p) && only_constant_large(g, p)) || (explicit_good(g, p) && only_constant_large(f, p)))
      return PlaceQ{true, p};
  }
  return std::nullopt;
}

std::vector<PrepCluster> preperiodic_complex(const MonicPoly& f, int m_cap, int n_cap, double tol, long degree_budget) {
  const int d = f.degree();
  if (m_cap < 1 || n_cap < 0) throw std::invalid_argument("preperiodic_complex: m_cap >= 1, n_cap >= 0");
  if (std::pow(static_cast<double>(d), m_cap) > static_cast<double>(degree_budget))
    throw std::invalid_argument("preperiodic_complex: d^m_cap exceeds the degree budget");
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL);
  // start near the Julia set rather than on the escape circle
  const double r0 = 1.05 * std::max(1.0, radius_at(f, PlaceQ::infinity()) / 3.0);
  PointSet set(tol);

  for (int p = 1; p <= m_cap; ++p) {
    int n = 1;
    for (int k = 0; k < p; ++k) n *= d;
    auto ratio = [&](cplx z) { return periodic_ratio(f, p, z); };
    auto roots = aberth_roots(ratio, n, r0, rng, 1e-14, 800);
    for (auto& z : roots) set.insert({z, p, 0});
  }
  // strictly preperiodic points: preimages off the cycle, level by level
  std::vector<long> frontier;
  for (long i = 0; i < static_cast<long>(set.points().size()); ++i) frontier.push_back(i);
  for (int k = 1; k <= n_cap; ++k) {
    std::vector<long> next;
    for (long i : frontier) {
      PrepCluster c = set.points()[static_cast<size_t>(i)];
      int period = c.m - c.n;
      if (period + k > m_cap) continue;
      for (cplx w : preimages(f, c.z, rng)) {
        if (set.find(w) >= 0) continue;
        set.insert({w, period + k, k});
        next.push_back(static_cast<long>(set.points().size()) - 1);
      }
    }
    frontier = std::move(next);
  }
  return set.points();
}

bool is_preperiodic_exact(const MonicPoly& f, const Rat& x, int max_steps) {
  const double R = radius_at(f, PlaceQ::infinity());
  std::set<Rat> seen;
  Rat z = x;
  for (int k = 0; k <= max_steps; ++k) {
    if (!seen.insert(z).second) return true;
    if (std::fabs(z.to_double()) > R) return false;
    for (auto p : prime_divisors(z.den())) {
      if (explicit_good(f, p)) return false;
      if (Rat(-valuation(z, p)) > local_profile(f, PlaceQ{true, p}).log_R.coeff(p)) return false;
    }
    z = f(z);
  }
  return false;
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::disjoint: return "disjoint";
    case Verdict::intersection: return "intersection";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

int PrepCertificate::shared_count() const {
  int s = 0;
  for (auto& p : points) s += p.minpoly.degree();
  return s;
}

Rat best_rational(double x, long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("best_rational: non-finite");
  long h0 = 0, h1 = 1, k0 = 1, k1 = 0;
  double r = x;
  for (int it = 0; it < 64; ++it) {
    double a = std::floor(r);
    if (std::fabs(a) > 9e15) break;
    long ai = static_cast<long>(a);
    long k2 = ai * k1 + k0;
    if (k2 > max_den) break;
    long h2 = ai * h1 + h0;
    h0 = h1;
    h1 = h2;
    k0 = k1;
    k1 = k2;
    double frac = r - a;
    if (frac < 1e-15) break;
    r = 1.0 / frac;
  }
  if (k1 == 0) return Rat(static_cast<long>(std::llround(x)));
  return Rat(h1, k1);
}

namespace {

// f^m = f^n on Q[z]/(P)
bool iterate_relation(const MonicPoly& f, const QPoly& P, int m, int n) {
  QPoly beta = QPoly::z() % P, at_n;
  if (n == 0) at_n = beta;
  for (int k = 1; k <= m; ++k) {
    beta = compose_mod(f, beta, P);
    if (k == n) at_n = beta;
  }
  return beta == at_n;
}

std::optional<QPoly> reconstruct(const std::vector<cplx>& roots) {
  std::vector<cplx> c{cplx(1.0, 0.0)};
  for (cplx r : roots) {
    std::vector<cplx> nc(c.size() + 1, cplx(0.0, 0.0));
    for (size_t i = 0; i < c.size(); ++i) {
      nc[i + 1] += c[i];
      nc[i] -= r * c[i];
    }
    c = std::move(nc);
  }
  std::vector<Rat> q;
  for (cplx v : c) {
    double scale = std::max(1.0, std::abs(v));
    if (std::fabs(v.imag()) > 1e-6 * scale || std::fabs(v.real()) > 1e15) return std::nullopt;
    Rat r = best_rational(v.real(), 1000000);
    if (std::fabs(r.to_double() - v.real()) > 1e-7 * scale) return std::nullopt;
    q.push_back(r);
  }
  return QPoly(q);
}

constexpr size_t kMaxGroupDegree = 96;

}  // namespace

PrepCertificate prep_intersect(const MonicPoly& f, const MonicPoly& g, const PrepCaps& caps) {
  if (f == g) throw std::invalid_argument("prep_intersect: f == g");
  if (caps.m_cap < 1 || caps.tol <= 0) throw std::invalid_argument("prep_intersect: invalid caps");
  PrepCertificate cert;
  cert.caps = caps;
  cert.witness = disjoint_certificate(f, g);
  if (cert.witness && !caps.force_search) {
    cert.verdict = Verdict::disjoint;
    return cert;
  }
  cert.m_used_f = effective_cap(f.degree(), caps.m_cap, caps.degree_budget);
  cert.m_used_g = effective_cap(g.degree(), caps.m_cap, caps.degree_budget);
  cert.caps_hit = cert.m_used_f < caps.m_cap || cert.m_used_g < caps.m_cap;
  if (cert.m_used_f < 1 || cert.m_used_g < 1) {
    cert.verdict = Verdict::inconclusive;
    return cert;
  }
  auto cf = preperiodic_complex(f, cert.m_used_f, cert.m_used_f - 1, caps.tol, caps.degree_budget);
  auto cg = preperiodic_complex(g, cert.m_used_g, cert.m_used_g - 1, caps.tol, caps.degree_budget);
  PointSet gs(caps.tol);
  for (auto& c : cg) gs.insert(c);

  struct Match {
    cplx z;
    PrepCluster a, b;
  };
  std::vector<Match> matches;
  for (auto& a : cf) {
    long i = gs.find(a.z);
    if (i >= 0) matches.push_back({a.z, a, gs.points()[static_cast<size_t>(i)]});
  }
  cert.numeric_matches = static_cast<int>(matches.size());
  const int levels = std::max(cert.m_used_f, cert.m_used_g);
  for (int L = 1; L <= levels; ++L) {
    int c = 0;
    for (auto& m : matches)
      if (m.a.m <= L && m.b.m <= L) ++c;
    cert.matches_by_level.push_back(c);
  }
  const int dmax = std::max(f.degree(), g.degree());
  for (size_t L = 2; L < cert.matches_by_level.size(); ++L) {
    auto& v = cert.matches_by_level;
    if (v[L - 2] > 4 * dmax && v[L - 1] > v[L - 2] && v[L] > v[L - 1]) cert.suspected_equal = true;
  }

  std::map<std::array<int, 4>, std::vector<cplx>> groups;
  for (auto& m : matches) {
    if (std::fabs(m.z.imag()) <= caps.tol) {
      Rat x = best_rational(m.z.real(), 1000000);
      if (std::fabs(x.to_double() - m.z.real()) <= caps.tol * std::max(1.0, std::fabs(m.z.real())) &&
          is_preperiodic_exact(f, x) && is_preperiodic_exact(g, x)) {
        SharedPoints sp;
        sp.minpoly = QPoly({-x, Rat(1)});
        sp.rational = true;
        sp.f_m = m.a.m, sp.f_n = m.a.n, sp.g_m = m.b.m, sp.g_n = m.b.n;
        auto hf = canonical_height(f, x), hg = canonical_height(g, x);
        sp.hf = hf.preperiodic ? 0.0 : hf.value();
        sp.hg = hg.preperiodic ? 0.0 : hg.value();
        cert.points.push_back(std::move(sp));
        continue;
      }
    }
    groups[{m.a.m, m.a.n, m.b.m, m.b.n}].push_back(m.z);
  }
  for (auto& [tag, roots] : groups) {
    std::optional<QPoly> P;
    if (roots.size() <= kMaxGroupDegree) P = reconstruct(roots);
    bool ok = P && P->degree() >= 1 && gcd(*P, P->derivative()).degree() == 0 &&
              iterate_relation(f, *P, tag[0], tag[1]) && iterate_relation(g, *P, tag[2], tag[3]);
    if (!ok) {
      cert.uncertified += static_cast<int>(roots.size());
      continue;
    }
    SharedPoints sp;
    sp.minpoly = *P;
    sp.f_m = tag[0], sp.f_n = tag[1], sp.g_m = tag[2], sp.g_n = tag[3];
    // the exact relation makes the orbit repeat within tag steps
    AlgebraicPoint pt;
    pt.minpoly = P->primitive();
    pt.embeddings = roots;
    auto hf = canonical_height_alg(f, pt, tag[0], std::numeric_limits<long>::max());
    auto hg = canonical_height_alg(g, pt, tag[2], std::numeric_limits<long>::max());
    sp.hf = hf.preperiodic ? 0.0 : hf.value;
    sp.hg = hg.preperiodic ? 0.0 : hg.value;
    cert.points.push_back(std::move(sp));
  }
  std::sort(cert.points.begin(), cert.points.end(), [](const SharedPoints& a, const SharedPoints& b) {
    if (a.minpoly.degree() != b.minpoly.degree()) return a.minpoly.degree() < b.minpoly.degree();
    return a.minpoly.coeff(0) < b.minpoly.coeff(0);
  });
  cert.verdict = cert.points.empty() ? Verdict::inconclusive : Verdict::intersection;
  return cert;
}

std::vector<Rat> rational_prep(const MonicPoly& f, long height_cap) {
  if (height_cap < 1) throw std::invalid_argument("rational_prep: height_cap >= 1");
  // denominators divide prod p^{floor(log_p R_p)} over bad primes
  std::vector<long> dens{1};
  for (auto p : f.denominator_primes()) {
    if (explicit_good(f, p)) continue;
    Rat e = local_profile(f, PlaceQ{true, p}).log_R.coeff(p);
    mpz_class fl;
    mpz_fdiv_q(fl.get_mpz_t(), e.num().get_mpz_t(), e.den().get_mpz_t());
    std::vector<long> next;
    for (long b : dens) {
      long q = b;
      for (long k = 0; k <= fl.get_si() && q <= height_cap; ++k) {
        next.push_back(q);
        if (q > height_cap / static_cast<long>(p)) break;
        q *= static_cast<long>(p);
      }
    }
    dens = std::move(next);
  }
  const double R = radius_at(f, PlaceQ::infinity());
  std::vector<Rat> out;
  for (long b : dens) {
    long amax = std::min(height_cap, static_cast<long>(std::floor(R * static_cast<double>(b))));
    for (long a = -amax; a <= amax; ++a) {
      if (std::gcd(std::labs(a), b) != 1) continue;
      Rat x(a, b);
      if (is_preperiodic_exact(f, x)) out.push_back(x);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace adyn
