// Exact rationals, places of Q and integer factorization.
#pragma once

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace adyn {

class Rat {
 public:
  Rat() = default;
  Rat(long v) : q_(v) {}  // NOLINT(google-explicit-constructor)
  Rat(long num, long den);
  explicit Rat(const mpz_class& v) : q_(v) {}
  Rat(const mpz_class& num, const mpz_class& den);
  explicit Rat(const mpq_class& v) : q_(v) { q_.canonicalize(); }

  // Accepts "a", "-a", "a/b".
  static Rat parse(const std::string& s);

  mpz_class num() const { return q_.get_num(); }
  mpz_class den() const { return q_.get_den(); }
  const mpq_class& raw() const { return q_; }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }
  Rat abs() const { return Rat(mpq_class(::abs(q_))); }
  Rat inverse() const;
  Rat pow(long e) const;
  double to_double() const { return q_.get_d(); }
  std::string to_string() const { return q_.get_str(); }

  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o);

  friend Rat operator+(Rat a, const Rat& b) { return a += b; }
  friend Rat operator-(Rat a, const Rat& b) { return a -= b; }
  friend Rat operator*(Rat a, const Rat& b) { return a *= b; }
  friend Rat operator/(Rat a, const Rat& b) { return a /= b; }
  friend Rat operator-(const Rat& a) { return Rat(mpq_class(-a.q_)); }

  friend bool operator==(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) == 0; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    int c = cmp(a.q_, b.q_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  mpq_class q_;
};

Rat max(const Rat& a, const Rat& b);
Rat min(const Rat& a, const Rat& b);

struct PlaceQ {
  bool finite = false;
  std::uint64_t p = 0;

  static PlaceQ infinity() { return {}; }
  static PlaceQ prime(std::uint64_t p);
  bool is_archimedean() const { return !finite; }
  std::string to_string() const;

  friend bool operator==(const PlaceQ&, const PlaceQ&) = default;
  friend auto operator<=>(const PlaceQ&, const PlaceQ&) = default;
};

struct PrimePower {
  std::uint64_t p;
  unsigned e;
  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};
using Factorization = std::vector<PrimePower>;

bool is_prime(std::uint64_t n);
// Primes strictly increasing. Throws std::domain_error for n = 0 or for a prime factor >= 2^64.
Factorization factor(const mpz_class& n);
std::vector<std::uint64_t> prime_divisors(const mpz_class& n);
mpz_class radical(const mpz_class& n);
std::uint64_t radical(std::uint64_t n);

// v_p(x) for x != 0.
long valuation(const Rat& x, std::uint64_t p);
long valuation(const mpz_class& n, std::uint64_t p);

// |x|_v with |p|_p = 1/p.
double abs_at(const Rat& x, const PlaceQ& v);

// Number of x in Q with H(x) <= X.
std::uint64_t count_rationals_upto(long X);
// Uniform over {x : H(x) <= X}.
Rat sample_rational(long X, std::mt19937_64& rng);

// Independent stream for sample `index` of a run seeded with `master`.
std::mt19937_64 stream_rng(std::uint64_t master, std::uint64_t index);

}  // namespace adyn
