#include "arithdyn/qpoly.hpp"

#include <sstream>
#include <stdexcept>

namespace adyn {

QPoly::QPoly(std::vector<Rat> c) : c_(std::move(c)) { trim(); }

void QPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

QPoly QPoly::from_monic(const MonicPoly& f) {
  std::vector<Rat> c = f.lower();
  c.push_back(Rat(1));
  return QPoly(std::move(c));
}

QPoly QPoly::from_integers(const std::vector<mpz_class>& c) {
  std::vector<Rat> r;
  for (auto& v : c) r.emplace_back(v);
  return QPoly(std::move(r));
}

Rat QPoly::operator()(const Rat& x) const {
  Rat s(0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + *it;
  return s;
}

std::complex<double> QPoly::operator()(std::complex<double> x) const {
  std::complex<double> s(0.0, 0.0);
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) s = s * x + it->to_double();
  return s;
}

QPoly QPoly::monic() const {
  if (is_zero()) return *this;
  Rat l = lead();
  QPoly r = *this;
  for (auto& c : r.c_) c /= l;
  return r;
}

QPoly QPoly::derivative() const {
  std::vector<Rat> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rat(static_cast<long>(i)));
  return QPoly(std::move(d));
}

std::vector<mpz_class> QPoly::primitive() const {
  if (is_zero()) return {};
  mpz_class l = 1;
  for (auto& c : c_) l = lcm(l, c.den());
  std::vector<mpz_class> z;
  mpz_class g = 0;
  for (auto& c : c_) {
    z.push_back(c.num() * (l / c.den()));
    g = gcd(g, z.back());
  }
  if (z.back() < 0) g = -g;
  for (auto& v : z) v /= g;
  return z;
}

QPoly& QPoly::operator+=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] += o.c_[i];
  trim();
  return *this;
}

QPoly& QPoly::operator-=(const QPoly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
  for (size_t i = 0; i < o.c_.size(); ++i) c_[i] -= o.c_[i];
  trim();
  return *this;
}

QPoly operator*(const QPoly& a, const QPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpq_class> acc(a.c_.size() + b.c_.size() - 1);
  for (size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i].is_zero()) continue;
    for (size_t j = 0; j < b.c_.size(); ++j) acc[i + j] += a.c_[i].raw() * b.c_[j].raw();
  }
  std::vector<Rat> c;
  c.reserve(acc.size());
  for (auto& q : acc) c.emplace_back(q);
  return QPoly(std::move(c));
}

QPoly operator*(const Rat& s, const QPoly& a) {
  std::vector<Rat> c = a.c_;
  for (auto& v : c) v *= s;
  return QPoly(std::move(c));
}

std::string QPoly::to_string() const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (int i = degree(); i >= 0; --i) {
    const Rat& c = c_[static_cast<size_t>(i)];
    if (c.is_zero()) continue;
    if (!first) os << (c.sign() < 0 ? " - " : " + ");
    else if (c.sign() < 0) os << "-";
    first = false;
    Rat m = c.abs();
    bool unit = m == Rat(1);
    if (i == 0 || !unit) os << (m.is_integer() || i == 0 ? m.to_string() : "(" + m.to_string() + ")");
    if (i > 0) os << "z";
    if (i > 1) os << "^" << i;
  }
  return os.str();
}

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r) {
  if (b.is_zero()) throw std::domain_error("QPoly: division by zero");
  int db = b.degree();
  std::vector<mpq_class> rem;
  for (auto& c : a.coeffs()) rem.push_back(c.raw());
  std::vector<Rat> quot(a.degree() >= db ? static_cast<size_t>(a.degree() - db + 1) : 0);
  mpq_class lb = b.lead().raw();
  for (int i = a.degree(); i >= db; --i) {
    mpq_class t = rem[static_cast<size_t>(i)] / lb;
    if (sgn(t) == 0) continue;
    quot[static_cast<size_t>(i - db)] = Rat(t);
    for (int k = 0; k <= db; ++k) rem[static_cast<size_t>(i - db + k)] -= t * b.coeff(k).raw();
  }
  rem.resize(static_cast<size_t>(std::max(db, 0)));
  std::vector<Rat> rr;
  for (auto& v : rem) rr.emplace_back(v);
  q = QPoly(std::move(quot));
  r = QPoly(std::move(rr));
}

QPoly operator%(const QPoly& a, const QPoly& b) {
  QPoly q, r;
  divmod(a, b, q, r);
  return r;
}

QPoly gcd(QPoly a, QPoly b) {
  while (!b.is_zero()) {
    QPoly r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

bool divides(const QPoly& b, const QPoly& a) { return (a % b).is_zero(); }

Rat resultant(const QPoly& a_in, const QPoly& b_in) {
  QPoly a = a_in, b = b_in;
  if (a.is_zero() || b.is_zero()) return Rat(0);
  Rat acc(1);
  for (;;) {
    int da = a.degree(), db = b.degree();
    if (db == 0) return acc * b.lead().pow(da);
    if (da == 0) return acc * a.lead().pow(db);
    QPoly r = a % b;
    if (r.is_zero()) return Rat(0);
    int dr = r.degree();
    if ((da * db) % 2 == 1) acc = -acc;
    acc *= b.lead().pow(da - dr);
    a = std::move(b);
    b = std::move(r);
  }
}

QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys) {
  if (xs.size() != ys.size() || xs.empty()) throw std::invalid_argument("interpolate: bad sizes");
  // Newton divided differences
  size_t n = xs.size();
  std::vector<Rat> dd = ys;
  for (size_t k = 1; k < n; ++k)
    for (size_t i = n - 1; i >= k; --i) dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - k]);
  QPoly p = QPoly::constant(dd[n - 1]);
  for (size_t i = n - 1; i-- > 0;) p = p * QPoly({-xs[i], Rat(1)}) + QPoly::constant(dd[i]);
  return p;
}

QPoly QPoly::parse(const std::string& text) {
  auto terms = parse_polynomial_terms(text);
  if (terms.empty()) return QPoly();
  std::vector<Rat> c(static_cast<size_t>(terms.rbegin()->first) + 1, Rat(0));
  for (auto& [k, v] : terms) {
    if (k < 0) throw std::invalid_argument("QPoly::parse: negative exponent");
    c[static_cast<size_t>(k)] = v;
  }
  return QPoly(c);
}

QPoly compose_mod(const MonicPoly& f, const QPoly& p, const QPoly& m) {
  QPoly w = QPoly::constant(Rat(1));
  for (int i = f.degree() - 1; i >= 0; --i) {
    w = w * p + QPoly::constant(f.lower()[static_cast<size_t>(i)]);
    if (!m.is_zero()) w = w % m;
  }
  return w;
}

QPoly iterate(const MonicPoly& f, int n) {
  QPoly w = QPoly::z();
  for (int k = 0; k < n; ++k) w = compose_mod(f, w, QPoly());
  return w;
}

}  // namespace adyn
