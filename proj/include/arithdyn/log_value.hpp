// Exact real numbers of the form sum_p q_p log p.
#pragma once

#include "arithdyn/rat.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>

namespace adyn {

class LogValue {
 public:
  LogValue() = default;

  // q log p
  static LogValue log_prime(std::uint64_t p, const Rat& q = Rat(1));
  // log|n| for an integer n != 0
  static LogValue log_int(const mpz_class& n);
  // log|x| for x != 0
  static LogValue log_rat(const Rat& x);

  const std::map<std::uint64_t, Rat>& terms() const { return terms_; }
  Rat coeff(std::uint64_t p) const;
  bool is_zero() const { return terms_.empty(); }
  double value() const;
  // Single-prime value q log p, as (p, q). Empty for zero; nullopt if several primes.
  std::optional<std::pair<std::uint64_t, Rat>> single_prime() const;

  LogValue& operator+=(const LogValue& o);
  LogValue& operator-=(const LogValue& o);
  LogValue& operator*=(const Rat& s);
  friend LogValue operator+(LogValue a, const LogValue& b) { return a += b; }
  friend LogValue operator-(LogValue a, const LogValue& b) { return a -= b; }
  friend LogValue operator*(LogValue a, const Rat& s) { return a *= s; }
  friend LogValue operator*(const Rat& s, LogValue a) { return a *= s; }
  friend LogValue operator-(LogValue a) { return a *= Rat(-1); }
  friend bool operator==(const LogValue& a, const LogValue& b) { return a.terms_ == b.terms_; }

  std::string to_string() const;

 private:
  void add_term(std::uint64_t p, const Rat& q);
  std::map<std::uint64_t, Rat> terms_;
};

// Larger of two log-values, by floating comparison of the exact values; ties keep a.
const LogValue& max_by_value(const LogValue& a, const LogValue& b);

// h(x) = log max(|num|, den)
LogValue weil_height(const Rat& x);
// log|x|_v, x != 0
LogValue log_abs_at(const Rat& x, const PlaceQ& v);
// log max(1, |x|_v)
LogValue log_plus_abs_at(const Rat& x, const PlaceQ& v);
// sum over all places of log|x|_v; identically zero
LogValue product_formula_defect_exact(const Rat& x);
double product_formula_defect(const Rat& x);

}  // namespace adyn
