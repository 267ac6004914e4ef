#include "arithdyn/heights.hpp"

#include "arithdyn/roots.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace adyn {

namespace {

double log_abs(const mpz_class& n) {
  if (n == 0) return -std::numeric_limits<double>::infinity();
  long e = 0;
  double m = mpz_get_d_2exp(&e, n.get_mpz_t());
  return std::log(std::fabs(m)) + static_cast<double>(e) * std::log(2.0);
}

size_t bit_size(const Rat& x) {
  return mpz_sizeinbase(x.num().get_mpz_t(), 2) + mpz_sizeinbase(x.den().get_mpz_t(), 2);
}

// p-adic numbers p^v u with u a unit known modulo p^prec.
struct PAdic {
  bool exact_zero = false;
  bool lost = false;  // cancellation consumed all known digits
  long v = 0;
  long prec = 0;
  mpz_class u;
};

class PAdicField {
 public:
  PAdicField(std::uint64_t p, long digits) : p_(p), digits_(digits) {}

  PAdic from_rat(const Rat& x) const {
    PAdic a;
    if (x.is_zero()) {
      a.exact_zero = true;
      return a;
    }
    a.v = valuation(x, p_);
    mpz_class n = x.num(), d = x.den();
    strip(n);
    strip(d);
    mpz_class mod = pw(digits_), inv;
    mpz_invert(inv.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
    a.u = n * inv;
    mpz_fdiv_r(a.u.get_mpz_t(), a.u.get_mpz_t(), mod.get_mpz_t());
    a.prec = digits_;
    return a;
  }

  PAdic mul(const PAdic& a, const PAdic& b) const {
    if (a.lost || b.lost) return lost();
    if (a.exact_zero || b.exact_zero) return zero();
    PAdic r;
    r.v = a.v + b.v;
    r.prec = std::min(a.prec, b.prec);
    r.u = a.u * b.u;
    mpz_class mod = pw(r.prec);
    mpz_fdiv_r(r.u.get_mpz_t(), r.u.get_mpz_t(), mod.get_mpz_t());
    return r;
  }

  PAdic add(const PAdic& a_in, const PAdic& b_in) const {
    if (a_in.lost || b_in.lost) return lost();
    if (a_in.exact_zero) return b_in;
    if (b_in.exact_zero) return a_in;
    const PAdic& a = a_in.v <= b_in.v ? a_in : b_in;
    const PAdic& b = a_in.v <= b_in.v ? b_in : a_in;
    long abs_prec = std::min(a.v + a.prec, b.v + b.prec);
    long r = abs_prec - a.v;
    if (r <= 0) return lost();
    mpz_class mod = pw(r);
    mpz_class s = a.u;
    long shift = b.v - a.v;
    if (shift < r) s += b.u * pw(shift);
    mpz_fdiv_r(s.get_mpz_t(), s.get_mpz_t(), mod.get_mpz_t());
    if (s == 0) return lost();
    long k = 0;
    while (mpz_divisible_ui_p(s.get_mpz_t(), p_)) {
      mpz_divexact_ui(s.get_mpz_t(), s.get_mpz_t(), p_);
      ++k;
    }
    PAdic out;
    out.v = a.v + k;
    out.prec = r - k;
    out.u = s;
    return out;
  }

 private:
  static PAdic zero() {
    PAdic z;
    z.exact_zero = true;
    return z;
  }
  static PAdic lost() {
    PAdic z;
    z.lost = true;
    return z;
  }
  mpz_class pw(long e) const {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), p_, static_cast<unsigned long>(e));
    return r;
  }
  void strip(mpz_class& n) const {
    while (mpz_divisible_ui_p(n.get_mpz_t(), p_)) mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p_);
  }
  std::uint64_t p_;
  long digits_;
};

struct LocalHeight {
  Rat exact;  // in units of log p
  bool interval = false;
  Rat hi;     // upper end in units of log p when interval
};

constexpr int kLocalDepth = 64;

LocalHeight bad_place_height(const MonicPoly& f, const Rat& x, std::uint64_t p) {
  const Rat logR = local_profile(f, PlaceQ{true, p}).log_R.coeff(p);
  PAdicField F(p, 64);
  std::vector<PAdic> a;
  for (auto& c : f.lower()) a.push_back(F.from_rat(c));
  PAdic one = F.from_rat(Rat(1));
  PAdic z = F.from_rat(x);
  Rat scale(1);
  const Rat d(f.degree());
  for (int k = 0; k <= kLocalDepth; ++k) {
    if (z.lost) return {Rat(0), true, scale * d * logR};
    if (!z.exact_zero && Rat(-z.v) > logR) return {scale * Rat(-z.v), false, Rat(0)};
    if (k == kLocalDepth) break;
    PAdic w = one;
    for (int i = f.degree() - 1; i >= 0; --i) w = F.add(F.mul(w, z), a[static_cast<size_t>(i)]);
    z = w;
    scale /= d;
  }
  // |f^k(x)|_p <= R_p for k <= depth, so G(x) <= d^{-depth} log R_p
  return {Rat(0), true, scale * logR};
}

enum class OrbitFate { periodic, escapes, unknown };

OrbitFate exact_orbit(const MonicPoly& f, const Rat& x) {
  const double R = radius_at(f, PlaceQ::infinity());
  std::set<Rat> seen;
  Rat z = x;
  for (int k = 0; k < 64; ++k) {
    if (!seen.insert(z).second) return OrbitFate::periodic;
    if (std::fabs(z.to_double()) >= R) return OrbitFate::escapes;
    for (auto p : prime_divisors(z.den()))
      if (explicit_good(f, p)) return OrbitFate::escapes;
    if (bit_size(z) > 4096) return OrbitFate::unknown;
    z = f(z);
  }
  return OrbitFate::unknown;
}

double log_plus_iterate(const MonicPoly& f, cplx z, int n) {
  const double d = f.degree();
  const double big = std::pow(1e250, 1.0 / d);
  cplx w = z;
  for (int k = 0; k < n; ++k) {
    if (std::abs(w) > big) {
      double L = std::log(std::abs(w));
      for (int r = k; r < n; ++r) L *= d;
      return L;
    }
    w = f(w);
  }
  return std::max(0.0, std::log(std::abs(w)));
}

}  // namespace

HeightValue canonical_height(const MonicPoly& f, const Rat& x) {
  HeightValue h;
  if (exact_orbit(f, x) == OrbitFate::periodic) {
    h.preperiodic = true;
    return h;
  }
  std::set<std::uint64_t> primes;
  for (auto p : prime_divisors(x.den())) primes.insert(p);
  for (auto p : f.denominator_primes()) primes.insert(p);
  for (auto p : primes) {
    if (explicit_good(f, p)) {
      h.exact += log_plus_abs_at(x, PlaceQ{true, p});
      continue;
    }
    LocalHeight lh = bad_place_height(f, x, p);
    if (!lh.interval) {
      h.exact += LogValue::log_prime(p, lh.exact);
    } else {
      double hi = lh.hi.to_double() * std::log(static_cast<double>(p));
      h.numeric += 0.5 * hi;
      h.err += 0.5 * hi;
    }
  }
  if (f.is_power_map()) {
    h.exact += log_plus_abs_at(x, PlaceQ::infinity());
  } else {
    h.numeric += green_arch(f, cplx(x.to_double(), 0.0), 1e-13);
    h.err += 1e-12;
  }
  return h;
}

namespace {

using Fp = std::vector<std::uint64_t>;  // low to high, trimmed

void trim(Fp& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Fp fp_mod(Fp a, const Fp& m, std::uint64_t p) {
  trim(a);
  std::uint64_t inv = 1;
  {
    // m.back()^(p-2)
    std::uint64_t b = m.back() % p, e = p - 2;
    while (e) {
      if (e & 1) inv = inv * b % p;
      b = b * b % p;
      e >>= 1;
    }
  }
  while (a.size() >= m.size()) {
    std::uint64_t t = a.back() * inv % p;
    size_t off = a.size() - m.size();
    for (size_t i = 0; i < m.size(); ++i) a[off + i] = (a[off + i] + p - t * m[i] % p) % p;
    trim(a);
  }
  return a;
}

Fp fp_mul(const Fp& a, const Fp& b, const Fp& m, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Fp c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % p;
  return fp_mod(c, m, p);
}

Fp fp_pow(Fp base, std::uint64_t e, const Fp& m, std::uint64_t p) {
  Fp r = {1};
  base = fp_mod(base, m, p);
  while (e) {
    if (e & 1) r = fp_mul(r, base, m, p);
    base = fp_mul(base, base, m, p);
    e >>= 1;
  }
  return r;
}

Fp fp_gcd(Fp a, Fp b, std::uint64_t p) {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Fp r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

Fp fp_sub_x(Fp a, std::uint64_t p) {
  if (a.size() < 2) a.resize(2, 0);
  a[1] = (a[1] + p - 1) % p;
  trim(a);
  return a;
}

bool rabin_irreducible(const Fp& f, std::uint64_t p) {
  size_t n = f.size() - 1;
  Fp x = {0, 1};
  std::vector<Fp> frob(n + 1);  // x^{p^k} mod f
  frob[0] = fp_mod(x, f, p);
  for (size_t k = 1; k <= n; ++k) frob[k] = fp_pow(frob[k - 1], p, f, p);
  if (!fp_sub_x(frob[n], p).empty()) return false;
  for (std::uint64_t q = 2; q <= n; ++q) {
    if (n % q != 0 || !is_prime(q)) continue;
    Fp g = fp_gcd(f, fp_sub_x(frob[n / q], p), p);
    if (g.size() != 1) return false;
  }
  return true;
}

}  // namespace

bool irreducible_mod_some_prime(const QPoly& m) {
  auto z = m.primitive();
  if (z.size() <= 2) return true;
  int tried = 0;
  for (std::uint64_t p = 3; p < 2000 && tried < 40; p += 2) {
    if (!is_prime(p)) continue;
    mpz_class lc = z.back();
    if (mpz_divisible_ui_p(lc.get_mpz_t(), p)) continue;
    Fp f;
    for (auto& c : z) {
      mpz_class r;
      mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
      f.push_back(r.get_ui());
    }
    // squarefree reduction only
    Fp df;
    for (size_t i = 1; i < f.size(); ++i) df.push_back(f[i] * (i % p) % p);
    trim(df);
    if (df.empty() || fp_gcd(f, df, p).size() != 1) continue;
    ++tried;
    if (rabin_irreducible(f, p)) return true;
  }
  return false;
}

AlgebraicPoint AlgebraicPoint::from_poly(const QPoly& m) {
  if (m.degree() < 1) throw std::invalid_argument("AlgebraicPoint: degree >= 1");
  if (gcd(m, m.derivative()).degree() > 0) throw std::invalid_argument("AlgebraicPoint: polynomial not squarefree");
  AlgebraicPoint a;
  a.minpoly = m.primitive();
  std::vector<cplx> c;
  for (auto& v : a.minpoly) c.emplace_back(v.get_d(), 0.0);
  std::mt19937_64 rng(0x5eed);
  a.embeddings = polynomial_roots(c, rng);
  a.irreducible_verified = m.degree() == 1 || irreducible_mod_some_prime(m);
  return a;
}

AlgebraicPoint AlgebraicPoint::rational(const Rat& x) {
  return from_poly(QPoly({-x, Rat(1)}));
}

double algebraic_height(const std::vector<mpz_class>& prim, const std::vector<cplx>& roots) {
  double s = log_abs(prim.back());
  for (cplx r : roots) s += std::max(0.0, std::log(std::abs(r)));
  return s / static_cast<double>(prim.size() - 1);
}

AlgHeight canonical_height_alg(const MonicPoly& f, const AlgebraicPoint& x, int n, long degree_cap) {
  if (n < 1) throw std::invalid_argument("canonical_height_alg: n >= 1");
  const int d = f.degree();
  const int D = x.degree();
  double budget = std::pow(static_cast<double>(d), n) * D;
  if (budget > static_cast<double>(degree_cap)) throw std::length_error("canonical_height_alg: degree cap exceeded");

  const QPoly m = x.poly();
  QPoly beta = QPoly::z() % m;
  std::set<std::string> seen{beta.to_string()};
  for (int k = 0; k < n; ++k) {
    beta = compose_mod(f, beta, m);
    if (!seen.insert(beta.to_string()).second) return {0.0, 0.0, true};
  }
  // characteristic polynomial of beta on Q[y]/(m): Res_y(m(y), t - beta(y))
  std::vector<Rat> ts, vals;
  for (int t = 0; t <= D; ++t) {
    ts.emplace_back(t);
    vals.push_back(resultant(m, QPoly::constant(Rat(t)) - beta));
  }
  auto prim = interpolate(ts, vals).primitive();

  double sum = log_abs(prim.back());
  for (cplx r : x.embeddings) sum += log_plus_iterate(f, r, n);
  double h = sum / static_cast<double>(D);
  const double dn = std::pow(static_cast<double>(d), n);
  // |h(f(y)) - d h(y)| <= d (h(f) + log 3) + log(d+1) for monic f
  const double C = d * (height(f).value() + std::log(3.0)) + std::log(d + 1.0);
  return {h / dn, C / (dn * (d - 1)) + 1e-10, false};
}

std::string to_string(PairingTag t) {
  switch (t) {
    case PairingTag::exact: return "exact";
    case PairingTag::numeric: return "numeric";
    case PairingTag::interval: return "interval";
  }
  return "?";
}

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::good_assoc: return "good-assoc";
    case Provenance::one_sided_good: return "one-sided-good";
    case Provenance::trivial: return "trivial";
    case Provenance::identical: return "identical";
    case Provenance::bad: return "bad";
    case Provenance::archimedean: return "archimedean";
  }
  return "?";
}

PairingEntry local_pairing(const MonicPoly& f, const MonicPoly& g, const PlaceQ& v) {
  if (v.is_archimedean()) throw std::invalid_argument("local_pairing: finite place required");
  if (f.degree() != g.degree()) throw std::invalid_argument("local_pairing: degrees differ");
  PairingEntry e;
  e.v = v;
  const bool gf = explicit_good(f, v.p), gg = explicit_good(g, v.p);
  LogValue full = (log_M_at(f, v) + log_M_at(g, v)) * Rat(1, f.degree());
  if (f == g) {
    e.provenance = Provenance::identical;
  } else if (gf && gg) {
    e.provenance = Provenance::trivial;
  } else if (gf || gg) {
    // mu at the good side is the Gauss point mass, where G = (1/d) log M
    e.lo = e.hi = full;
    e.provenance = Provenance::one_sided_good;
    auto prof = classify_places(f, g);
    if (auto* pc = prof.find(v.p); pc && pc->assoc) {
      e.provenance = Provenance::good_assoc;
      e.assoc = pc->assoc;
    }
  } else {
    e.tag = PairingTag::interval;
    e.provenance = Provenance::bad;
    e.hi = full;
  }
  return e;
}

LogValue PairingReport::good_sum() const {
  LogValue s;
  for (auto& e : entries)
    if (e.provenance == Provenance::good_assoc) s += e.lo;
  return s;
}

LogValue PairingReport::bad_mass() const {
  LogValue s;
  for (auto& e : entries)
    if (e.tag == PairingTag::interval) s += e.hi;
  return s;
}

PairingReport global_pairing(const MonicPoly& f, const MonicPoly& g, const EquilibriumSample& sf,
                             const EquilibriumSample& sg, std::mt19937_64& rng) {
  if (f.degree() != g.degree()) throw std::invalid_argument("global_pairing: degrees differ");
  PairingReport r;
  std::set<std::uint64_t> primes;
  for (auto p : f.denominator_primes()) primes.insert(p);
  for (auto p : g.denominator_primes()) primes.insert(p);
  for (auto p : primes) {
    auto e = local_pairing(f, g, PlaceQ{true, p});
    r.finite_lo += e.lo;
    r.finite_hi += e.hi;
    r.entries.push_back(std::move(e));
  }
  r.arch = arch_pairing(f, g, sf, sg, rng);
  PairingEntry a;
  a.v = PlaceQ::infinity();
  a.tag = PairingTag::numeric;
  a.provenance = Provenance::archimedean;
  a.value = r.arch.value;
  a.err = r.arch.err();
  r.entries.push_back(a);
  r.total_lo = r.finite_lo.value() + std::max(0.0, r.arch.value - 2.0 * r.arch.err());
  r.total_hi = r.finite_hi.value() + r.arch.value + 2.0 * r.arch.err();
  return r;
}

PairingReport global_pairing(const MonicPoly& f, const MonicPoly& g, int N, std::mt19937_64& rng) {
  auto sf = equilibrium_sample(f, N, rng);
  auto sg = f == g ? sf : equilibrium_sample(g, N, rng);
  return global_pairing(f, g, sf, sg, rng);
}

std::vector<BoundReport> sandwich_check(const MonicPoly& f, const MonicPoly& g, long X, const PairingReport& pr) {
  if (!f.centered() || !in_height_box(f, X) || !in_height_box(g, X))
    throw std::invalid_argument("sandwich_check: pair must lie in P_c(X) x P(X)");
  const double hh = (height(f).value() + height(g).value()) / f.degree();
  std::vector<BoundReport> out;
  out.push_back({"pairing-2<=(h(f)+h(g))/d", pr.total_hi - 2.0, hh, pr.total_hi - 2.0 <= hh});
  double rhs = 2.0 * std::log(static_cast<double>(X));
  out.push_back({"(h(f)+h(g))/d<=2logX", hh, rhs, hh <= rhs + 1e-12});
  return out;
}

std::vector<BoundReport> sandwich_check(const MonicPoly& f, const MonicPoly& g, long X, int N, std::mt19937_64& rng) {
  return sandwich_check(f, g, X, global_pairing(f, g, N, rng));
}

Rat fudge_min(int d, int j, const Rat& log_aj) {
  if (j < 1 || j > d - 1) throw std::invalid_argument("fudge_min: 1 <= j <= d-1");
  if (log_aj.sign() <= 0) throw std::invalid_argument("fudge_min: log|a_j| > 0");
  if (2 * j <= d - 1) return log_aj / Rat(2 * (d - j));
  return Rat(d - j - 1, 2 * j * (d - j)) * log_aj;
}

double adelic_radius(double alpha, int d, long N) {
  return std::pow(static_cast<double>(d) * static_cast<double>(N), -1.0 / alpha);
}

namespace {

std::vector<RadiusEntry> radius_family(const MonicPoly& f, const std::set<std::uint64_t>& primes, long N) {
  const int d = f.degree();
  std::vector<RadiusEntry> out;
  RadiusEntry a;
  a.v = PlaceQ::infinity();
  a.alpha = holder_constants(f).alpha;
  a.eps = adelic_radius(a.alpha, d, N);
  out.push_back(a);
  for (auto p : primes) {
    RadiusEntry e;
    e.v = PlaceQ{true, p};
    if (explicit_good(f, p)) {
      e.explicit_good = true;
      out.push_back(e);
      continue;
    }
    // A_v = R_v^{d-1}
    double logR = local_profile(f, e.v).log_R.value();
    e.alpha = std::log(static_cast<double>(d)) / ((d - 1) * logR);
    e.eps = adelic_radius(e.alpha, d, N);
    out.push_back(e);
  }
  return out;
}

}  // namespace

EquidistributionReport equidistribution_bounds(const MonicPoly& f, const MonicPoly& g, long N) {
  if (N < 2) throw std::invalid_argument("equidistribution_bounds: N >= 2");
  EquidistributionReport r;
  std::set<std::uint64_t> primes;
  for (auto p : f.denominator_primes()) primes.insert(p);
  for (auto p : g.denominator_primes()) primes.insert(p);
  r.radii_f = radius_family(f, primes, N);
  r.radii_g = radius_family(g, primes, N);
  const double d = f.degree();
  const double h = std::max(height(f).value(), height(g).value());
  r.rhs_shape = d * (std::log(static_cast<double>(N)) / static_cast<double>(N)) * (h + 1.0);
  r.bound = {"equidistribution-rhs-shape", 0.0, r.rhs_shape, true, true};
  return r;
}

}  // namespace adyn
