#include "arithdyn/log_value.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace adyn {

void LogValue::add_term(std::uint64_t p, const Rat& q) {
  if (q.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(p, q);
  if (!inserted) {
    it->second += q;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

LogValue LogValue::log_prime(std::uint64_t p, const Rat& q) {
  LogValue v;
  if (p != 1) v.add_term(p, q);
  return v;
}

LogValue LogValue::log_int(const mpz_class& n) {
  LogValue v;
  for (auto& pe : factor(n)) v.add_term(pe.p, Rat(static_cast<long>(pe.e)));
  return v;
}

LogValue LogValue::log_rat(const Rat& x) {
  if (x.is_zero()) throw std::domain_error("log of zero");
  return log_int(x.num()) - log_int(x.den());
}

Rat LogValue::coeff(std::uint64_t p) const {
  auto it = terms_.find(p);
  return it == terms_.end() ? Rat(0) : it->second;
}

double LogValue::value() const {
  double s = 0.0;
  for (auto& [p, q] : terms_) s += q.to_double() * std::log(static_cast<double>(p));
  return s;
}

std::optional<std::pair<std::uint64_t, Rat>> LogValue::single_prime() const {
  if (terms_.size() > 1) return std::nullopt;
  if (terms_.empty()) return std::make_pair(std::uint64_t{1}, Rat(0));
  return *terms_.begin();
}

LogValue& LogValue::operator+=(const LogValue& o) {
  for (auto& [p, q] : o.terms_) add_term(p, q);
  return *this;
}

LogValue& LogValue::operator-=(const LogValue& o) {
  for (auto& [p, q] : o.terms_) add_term(p, -q);
  return *this;
}

LogValue& LogValue::operator*=(const Rat& s) {
  if (s.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [p, q] : terms_) q *= s;
  return *this;
}

std::string LogValue::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [p, q] : terms_) {
    if (!first) os << " + ";
    first = false;
    os << "(" << q.to_string() << ")*log(" << p << ")";
  }
  return os.str();
}

const LogValue& max_by_value(const LogValue& a, const LogValue& b) {
  return b.value() > a.value() ? b : a;
}

LogValue weil_height(const Rat& x) {
  if (x.is_zero()) return {};
  mpz_class n = abs(x.num()), d = x.den();
  return LogValue::log_int(n > d ? n : d);
}

LogValue log_abs_at(const Rat& x, const PlaceQ& v) {
  if (x.is_zero()) throw std::domain_error("log_abs_at: zero");
  if (v.is_archimedean()) return LogValue::log_rat(x);
  return LogValue::log_prime(v.p, Rat(-valuation(x, v.p)));
}

LogValue log_plus_abs_at(const Rat& x, const PlaceQ& v) {
  if (x.is_zero()) return {};
  if (v.is_archimedean()) return x.abs() > Rat(1) ? LogValue::log_rat(x) : LogValue{};
  long e = valuation(x, v.p);
  return e < 0 ? LogValue::log_prime(v.p, Rat(-e)) : LogValue{};
}

LogValue product_formula_defect_exact(const Rat& x) {
  if (x.is_zero()) throw std::domain_error("product_formula_defect: zero");
  LogValue s = log_abs_at(x, PlaceQ::infinity());
  for (auto p : prime_divisors(x.num())) s += log_abs_at(x, PlaceQ{true, p});
  for (auto p : prime_divisors(x.den())) s += log_abs_at(x, PlaceQ{true, p});
  return s;
}

double product_formula_defect(const Rat& x) {
  if (x.is_zero()) throw std::domain_error("product_formula_defect: zero");
  double s = std::log(std::fabs(x.to_double()));
  for (auto p : prime_divisors(x.num())) s += std::log(abs_at(x, PlaceQ{true, p}));
  for (auto p : prime_divisors(x.den())) s += std::log(abs_at(x, PlaceQ{true, p}));
  return s;
}

}  // namespace adyn
