#include "arithdyn/poly.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace adyn {

MonicPoly::MonicPoly(std::vector<Rat> lower) : a_(std::move(lower)) {
  if (a_.size() < 2) throw std::invalid_argument("MonicPoly: degree must be >= 2");
  ca_.reserve(a_.size());
  for (auto& c : a_) ca_.emplace_back(c.to_double(), 0.0);
}

MonicPoly MonicPoly::power(int d) { return MonicPoly(std::vector<Rat>(static_cast<size_t>(d), Rat(0))); }

Rat MonicPoly::coeff(int i) const {
  if (i == degree()) return Rat(1);
  return a_.at(static_cast<size_t>(i));
}

bool MonicPoly::is_power_map() const {
  return std::all_of(a_.begin(), a_.end(), [](const Rat& c) { return c.is_zero(); });
}

Rat MonicPoly::operator()(const Rat& x) const {
  Rat w(1);
  for (int i = degree() - 1; i >= 0; --i) w = w * x + a_[static_cast<size_t>(i)];
  return w;
}

cplx MonicPoly::operator()(cplx z) const {
  cplx w(1.0, 0.0);
  for (int i = degree() - 1; i >= 0; --i) w = w * z + ca_[static_cast<size_t>(i)];
  return w;
}

void MonicPoly::eval_with_derivative(cplx z, cplx& w, cplx& dw) const {
  w = cplx(1.0, 0.0);
  dw = cplx(0.0, 0.0);
  for (int i = degree() - 1; i >= 0; --i) {
    dw = dw * z + w;
    w = w * z + ca_[static_cast<size_t>(i)];
  }
}

std::vector<std::uint64_t> MonicPoly::denominator_primes() const {
  std::set<std::uint64_t> ps;
  for (auto& c : a_)
    for (auto p : prime_divisors(c.den())) ps.insert(p);
  return {ps.begin(), ps.end()};
}

namespace {

std::string coeff_text(const Rat& c) {
  return c.is_integer() ? c.to_string() : "(" + c.to_string() + ")";
}

class Parser {
 public:
  explicit Parser(const std::string& s) {
    for (char ch : s)
      if (!std::isspace(static_cast<unsigned char>(ch))) s_.push_back(ch);
  }

  std::map<int, Rat> run() {
    std::map<int, Rat> out;
    if (s_.empty()) fail("empty input");
    bool first = true;
    while (pos_ < s_.size()) {
      int sign = 1;
      if (peek() == '+' || peek() == '-') {
        sign = get() == '-' ? -1 : 1;
      } else if (!first) {
        fail("expected '+' or '-'");
      }
      first = false;
      auto [deg, c] = term();
      out[deg] += Rat(sign) * c;
    }
    return out;
  }

 private:
  char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }
  char get() { return s_[pos_++]; }
  [[noreturn]] void fail(const std::string& why) const {
    throw std::invalid_argument("polynomial parse error at " + std::to_string(pos_) + ": " + why);
  }

  mpz_class integer() {
    size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (start == pos_) fail("expected integer");
    return mpz_class(s_.substr(start, pos_ - start));
  }

  Rat fraction() {
    mpz_class n = integer();
    if (peek() == '/') {
      ++pos_;
      mpz_class d = integer();
      if (d == 0) fail("zero denominator");
      return Rat(n, d);
    }
    return Rat(n);
  }

  std::pair<int, Rat> term() {
    Rat c(1);
    bool have_coeff = false;
    if (peek() == '(') {
      ++pos_;
      int sign = 1;
      if (peek() == '-' || peek() == '+') sign = get() == '-' ? -1 : 1;
      c = Rat(sign) * fraction();
      if (get() != ')') fail("expected ')'");
      have_coeff = true;
    } else if (std::isdigit(static_cast<unsigned char>(peek()))) {
      c = fraction();
      have_coeff = true;
    }
    if (peek() == '*') {
      if (!have_coeff) fail("dangling '*'");
      ++pos_;
    }
    if (peek() == 'z' || peek() == 'x') {
      ++pos_;
      int deg = 1;
      if (peek() == '^') {
        ++pos_;
        mpz_class e = integer();
        if (!e.fits_sint_p()) fail("exponent too large");
        deg = static_cast<int>(e.get_si());
      }
      return {deg, c};
    }
    if (!have_coeff) fail("expected term");
    return {0, c};
  }

  std::string s_;
  size_t pos_ = 0;
};

}  // namespace

std::map<int, Rat> parse_polynomial_terms(const std::string& text) { return Parser(text).run(); }

MonicPoly MonicPoly::parse(const std::string& text) {
  auto terms = Parser(text).run();
  for (auto it = terms.begin(); it != terms.end();)
    it = it->second.is_zero() ? terms.erase(it) : std::next(it);
  if (terms.empty()) throw std::invalid_argument("polynomial parse error: zero polynomial");
  int d = terms.rbegin()->first;
  if (d < 2) throw std::invalid_argument("polynomial must have degree >= 2");
  if (terms.rbegin()->second != Rat(1)) throw std::invalid_argument("polynomial must be monic");
  std::vector<Rat> lower(static_cast<size_t>(d), Rat(0));
  for (auto& [k, c] : terms)
    if (k < d) lower[static_cast<size_t>(k)] = c;
  return MonicPoly(std::move(lower));
}

std::string MonicPoly::to_string() const {
  std::ostringstream os;
  int d = degree();
  os << "z^" << d;
  for (int i = d - 1; i >= 0; --i) {
    const Rat& c = a_[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    os << (c.sign() < 0 ? " - " : " + ");
    Rat m = c.abs();
    if (i == 0) {
      os << m.to_string();
      continue;
    }
    if (m != Rat(1)) os << coeff_text(m);
    os << "z";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

LogValue log_M_at(const MonicPoly& f, const PlaceQ& v) {
  LogValue best;
  if (v.is_archimedean()) {
    Rat m(1);
    for (auto& c : f.lower()) m = max(m, c.abs());
    return m == Rat(1) ? best : LogValue::log_rat(m);
  }
  long lo = 0;
  for (auto& c : f.lower())
    if (!c.is_zero()) lo = std::min(lo, valuation(c, v.p));
  return LogValue::log_prime(v.p, Rat(-lo));
}

namespace {

// Index i in 1..d maximizing |a_{d-i}|_v^{1/i}, or 0 when all are <= 1.
// Returns the exponent (1/i) log|a_{d-i}|_v.
LogValue radius_core(const MonicPoly& f, const PlaceQ& v) {
  int d = f.degree();
  if (v.is_archimedean()) {
    // compare |a|^{1/i} exactly via |a|^{k} vs |b|^{i}
    int best_i = 0;
    Rat best_abs(1);
    for (int i = 1; i <= d; ++i) {
      Rat c = f.coeff(d - i).abs();
      if (c.is_zero()) continue;
      bool larger = best_i == 0 ? c > Rat(1) : c.pow(best_i) > best_abs.pow(i);
      if (larger) {
        best_i = i;
        best_abs = c;
      }
    }
    if (best_i == 0) return {};
    return LogValue::log_rat(best_abs) * Rat(1, best_i);
  }
  Rat best(0);
  for (int i = 1; i <= d; ++i) {
    Rat c = f.coeff(d - i);
    if (c.is_zero()) continue;
    best = max(best, Rat(-valuation(c, v.p), i));
  }
  return LogValue::log_prime(v.p, best);
}

}  // namespace

bool explicit_good(const MonicPoly& f, std::uint64_t p) {
  for (auto& c : f.lower())
    if (!c.is_zero() && mpz_divisible_ui_p(c.den().get_mpz_t(), p)) return false;
  return true;
}

LocalProfile local_profile(const MonicPoly& f, const PlaceQ& v) {
  LocalProfile lp;
  lp.v = v;
  lp.log_M = log_M_at(f, v);
  lp.log_R = radius_core(f, v);
  if (v.is_archimedean()) lp.log_R += LogValue::log_prime(3);
  lp.reduction = (!v.is_archimedean() && explicit_good(f, v.p)) ? Reduction::explicit_good : Reduction::bad;
  for (auto& c : f.lower())
    lp.coeff_abs.push_back(c.is_zero() ? std::nullopt : std::optional<LogValue>(log_abs_at(c, v)));
  return lp;
}

double radius_at(const MonicPoly& f, const PlaceQ& v) {
  double r = std::exp(radius_core(f, v).value());
  return v.is_archimedean() ? 3.0 * r : r;
}

LogValue height(const MonicPoly& f) {
  LogValue h = log_M_at(f, PlaceQ::infinity());
  for (auto p : f.denominator_primes()) h += log_M_at(f, PlaceQ{true, p});
  return h;
}

std::string CoeffId::to_string() const { return std::string(of_g ? "b" : "a") + std::to_string(j); }

const PlaceClass* PairProfile::find(std::uint64_t p) const {
  for (auto& pc : places)
    if (pc.v.p == p) return &pc;
  return nullptr;
}

PairProfile classify_places(const MonicPoly& f, const MonicPoly& g) {
  if (f.degree() != g.degree()) throw std::invalid_argument("classify_places: degrees differ");
  PairProfile prof{f, g, {}, local_profile(f, PlaceQ::infinity()), local_profile(g, PlaceQ::infinity())};
  std::set<std::uint64_t> primes;
  for (auto p : f.denominator_primes()) primes.insert(p);
  for (auto p : g.denominator_primes()) primes.insert(p);
  for (auto p : primes) {
    PlaceClass pc{PlaceQ{true, p}, std::nullopt};
    std::vector<CoeffId> large;
    for (int k = 0; k < 2; ++k) {
      const MonicPoly& h = k == 0 ? f : g;
      for (int j = 0; j < h.degree(); ++j) {
        const Rat& c = h.lower()[static_cast<size_t>(j)];
        if (!c.is_zero() && mpz_divisible_ui_p(c.den().get_mpz_t(), p)) large.push_back({k == 1, j});
      }
    }
    if (large.size() == 1) pc.assoc = large.front();
    prof.places.push_back(pc);
  }
  return prof;
}

bool in_height_box(const MonicPoly& f, long X) {
  mpz_class bound(X);
  for (auto& c : f.lower())
    if (abs(c.num()) > bound || c.den() > bound) return false;
  return true;
}

OrdinaryResult is_ordinary(const MonicPoly& f, const MonicPoly& g, long X, double eps) {
  if (X < 1) throw std::invalid_argument("is_ordinary: X >= 1");
  if (!f.centered()) throw std::invalid_argument("is_ordinary: f must be centered");
  if (f.degree() != g.degree()) throw std::invalid_argument("is_ordinary: degrees differ");
  if (!in_height_box(f, X) || !in_height_box(g, X))
    throw std::invalid_argument("is_ordinary: coefficient height exceeds X");

  struct Entry {
    CoeffId id;
    mpz_class den;
  };
  std::vector<Entry> cs;
  for (int k = 0; k < 2; ++k) {
    const MonicPoly& h = k == 0 ? f : g;
    for (int j = 0; j < h.degree(); ++j) {
      const Rat& c = h.lower()[static_cast<size_t>(j)];
      if (!c.is_zero()) cs.push_back({{k == 1, j}, c.den()});
    }
  }
  const double rad_floor = std::pow(static_cast<double>(X), 1.0 - 2.0 * eps);
  const double gcd_ceiling = std::pow(static_cast<double>(X), 2.0 * eps);
  for (auto& e : cs) {
    double r = radical(e.den).get_d();
    if (r < rad_floor) {
      std::ostringstream os;
      os << "rad(denom(" << e.id.to_string() << ")) = " << r << " < X^(1-2eps) = " << rad_floor;
      return {false, os.str()};
    }
  }
  for (size_t i = 0; i < cs.size(); ++i)
    for (size_t k = i + 1; k < cs.size(); ++k) {
      double gd = mpz_class(gcd(cs[i].den, cs[k].den)).get_d();
      if (gd > gcd_ceiling) {
        std::ostringstream os;
        os << "gcd(denom(" << cs[i].id.to_string() << "), denom(" << cs[k].id.to_string() << ")) = " << gd
           << " > X^(2eps) = " << gcd_ceiling;
        return {false, os.str()};
      }
    }
  return {true, ""};
}

LogValue assoc_mass(const PairProfile& prof, const CoeffId& c) {
  LogValue s;
  const MonicPoly& h = c.of_g ? prof.g : prof.f;
  const Rat& a = h.lower().at(static_cast<size_t>(c.j));
  for (auto& pc : prof.places)
    if (pc.assoc && *pc.assoc == c) s += log_abs_at(a, pc.v);
  return s;
}

void SliceSpec::validate(int d, bool centered) const {
  for (auto& [i, v] : fixed) {
    if (i < 0 || i >= d) throw std::invalid_argument("slice: fixed index out of range");
    if (i == 0) throw std::invalid_argument("slice: a_0 must be free");
    if (free.count(i)) throw std::invalid_argument("slice: index both fixed and free");
    if (centered && i == d - 1 && !v.is_zero())
      throw std::invalid_argument("slice: centered family needs a_{d-1} = 0");
  }
  for (int i : free)
    if (i < 0 || i >= d) throw std::invalid_argument("slice: free index out of range");
  if (!free.empty() && !free.count(0)) throw std::invalid_argument("slice: a_0 must be free");
}

MonicPoly sample(int d, long X, bool centered, const std::optional<SliceSpec>& slice, std::mt19937_64& rng) {
  if (d < 2) throw std::invalid_argument("sample: d >= 2");
  if (X < 1) throw std::invalid_argument("sample: X >= 1");
  if (slice) slice->validate(d, centered);
  std::vector<Rat> a(static_cast<size_t>(d));
  for (int i = 0; i < d; ++i) {
    if (centered && i == d - 1) {
      a[static_cast<size_t>(i)] = Rat(0);
    } else if (slice && slice->fixed.count(i)) {
      a[static_cast<size_t>(i)] = slice->fixed.at(i);
    } else if (slice && !slice->free.empty() && !slice->free.count(i)) {
      a[static_cast<size_t>(i)] = Rat(0);
    } else {
      a[static_cast<size_t>(i)] = sample_rational(X, rng);
    }
  }
  return MonicPoly(std::move(a));
}

}  // namespace adyn
