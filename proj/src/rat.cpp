#include "arithdyn/rat.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace adyn {

Rat::Rat(long num, long den) : q_(num, den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  q_.canonicalize();
}

Rat::Rat(const mpz_class& num, const mpz_class& den) : q_(num, den) {
  if (den == 0) throw std::domain_error("Rat: zero denominator");
  q_.canonicalize();
}

Rat Rat::parse(const std::string& s) {
  mpq_class q;
  if (s.empty() || q.set_str(s, 10) != 0 || q.get_den() == 0)
    throw std::invalid_argument("Rat: cannot parse '" + s + "'");
  q.canonicalize();
  return Rat(q);
}

Rat Rat::inverse() const {
  if (is_zero()) throw std::domain_error("Rat: inverse of zero");
  return Rat(mpq_class(1) / q_);
}

Rat Rat::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  mpz_class n, d;
  mpz_pow_ui(n.get_mpz_t(), q_.get_num_mpz_t(), static_cast<unsigned long>(e));
  mpz_pow_ui(d.get_mpz_t(), q_.get_den_mpz_t(), static_cast<unsigned long>(e));
  return Rat(mpq_class(n, d));
}

Rat& Rat::operator/=(const Rat& o) {
  if (o.is_zero()) throw std::domain_error("Rat: division by zero");
  q_ /= o.q_;
  return *this;
}

Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }
Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }

PlaceQ PlaceQ::prime(std::uint64_t p) {
  if (!is_prime(p)) throw std::invalid_argument("PlaceQ: " + std::to_string(p) + " is not prime");
  return {true, p};
}

std::string PlaceQ::to_string() const { return finite ? std::to_string(p) : "inf"; }

namespace {

constexpr std::uint64_t kTrialLimit = 1000000;

const std::vector<std::uint64_t>& small_primes() {
  static const std::vector<std::uint64_t> primes = [] {
    std::vector<bool> comp(kTrialLimit + 1, false);
    std::vector<std::uint64_t> out;
    for (std::uint64_t i = 2; i <= kTrialLimit; ++i) {
      if (comp[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = i * i; j <= kTrialLimit; j += i) comp[j] = true;
    }
    return out;
  }();
  return primes;
}

bool probable_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 30) > 0; }

mpz_class pollard_brent(const mpz_class& n) {
  if (n % 2 == 0) return 2;
  for (unsigned long c = 1;; ++c) {
    mpz_class y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1, m = 128;
    auto step = [&](mpz_class& v) { v = (v * v + c) % n; };
    while (g == 1) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          step(y);
          mpz_class diff = x - y;
          q = (q * abs(diff)) % n;
        }
        g = gcd(q, n);
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        step(ys);
        mpz_class diff = x - ys;
        g = gcd(mpz_class(abs(diff)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void split(const mpz_class& n, std::vector<mpz_class>& out) {
  if (n == 1) return;
  if (probable_prime(n)) {
    out.push_back(n);
    return;
  }
  mpz_class f = pollard_brent(n);
  split(f, out);
  split(n / f, out);
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  return probable_prime(mpz_class(static_cast<unsigned long>(n)));
}

Factorization factor(const mpz_class& n_in) {
  if (n_in == 0) throw std::domain_error("factor: zero");
  mpz_class n = abs(n_in);
  Factorization out;
  for (std::uint64_t p : small_primes()) {
    if (n == 1) break;
    mpz_class pp(static_cast<unsigned long>(p));
    if (pp * pp > n) break;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
        mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
        ++e;
      }
      out.push_back({p, e});
    }
  }
  if (n == 1) return out;
  std::vector<mpz_class> big;
  split(n, big);
  std::sort(big.begin(), big.end());
  for (const auto& q : big) {
    if (!q.fits_ulong_p()) throw std::domain_error("factor: prime factor exceeds 64 bits");
    std::uint64_t p = q.get_ui();
    if (!out.empty() && out.back().p == p)
      ++out.back().e;
    else
      out.push_back({p, 1});
  }
  std::sort(out.begin(), out.end(), [](auto& a, auto& b) { return a.p < b.p; });
  return out;
}

std::vector<std::uint64_t> prime_divisors(const mpz_class& n) {
  std::vector<std::uint64_t> out;
  for (auto& pe : factor(n)) out.push_back(pe.p);
  return out;
}

mpz_class radical(const mpz_class& n) {
  if (n < 1) throw std::domain_error("radical: n must be >= 1");
  mpz_class r = 1;
  for (auto& pe : factor(n)) r *= static_cast<unsigned long>(pe.p);
  return r;
}

std::uint64_t radical(std::uint64_t n) {
  return radical(mpz_class(static_cast<unsigned long>(n))).get_ui();
}

long valuation(const mpz_class& n, std::uint64_t p) {
  if (n == 0) throw std::domain_error("valuation of zero");
  mpz_class m = abs(n);
  long v = 0;
  while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
    mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
    ++v;
  }
  return v;
}

long valuation(const Rat& x, std::uint64_t p) {
  if (x.is_zero()) throw std::domain_error("valuation of zero");
  return valuation(x.num(), p) - valuation(x.den(), p);
}

double abs_at(const Rat& x, const PlaceQ& v) {
  if (x.is_zero()) return 0.0;
  if (v.is_archimedean()) return std::fabs(x.to_double());
  return std::pow(static_cast<double>(v.p), -static_cast<double>(valuation(x, v.p)));
}

std::uint64_t count_rationals_upto(long X) {
  if (X < 1) throw std::invalid_argument("count_rationals_upto: X >= 1");
  std::uint64_t coprime = 0;
  for (long b = 1; b <= X; ++b)
    for (long a = 1; a <= X; ++a)
      if (std::gcd(a, b) == 1) ++coprime;
  return 1 + 2 * coprime;
}

Rat sample_rational(long X, std::mt19937_64& rng) {
  if (X < 1) throw std::invalid_argument("sample_rational: X >= 1");
  std::uniform_int_distribution<long> num(-X, X), den(1, X);
  for (;;) {
    long a = num(rng), b = den(rng);
    if (std::gcd(a < 0 ? -a : a, b) == 1) return Rat(a, b);
  }
}

std::mt19937_64 stream_rng(std::uint64_t master, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(master), static_cast<std::uint32_t>(master >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                    0x9e3779b9u};
  return std::mt19937_64(seq);
}

}  // namespace adyn
