// Dense univariate polynomials over Q.
#pragma once

#include "arithdyn/poly.hpp"
#include "arithdyn/rat.hpp"

#include <complex>
#include <string>
#include <vector>

namespace adyn {

class QPoly {
 public:
  QPoly() = default;
  explicit QPoly(std::vector<Rat> c);  // c[i] is the coefficient of z^i
  static QPoly constant(const Rat& c) { return QPoly({c}); }
  static QPoly z() { return QPoly({Rat(0), Rat(1)}); }
  static QPoly from_monic(const MonicPoly& f);
  static QPoly from_integers(const std::vector<mpz_class>& c);
  static QPoly parse(const std::string& text);

  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  const std::vector<Rat>& coeffs() const { return c_; }
  Rat coeff(int i) const { return i >= 0 && i <= degree() ? c_[static_cast<size_t>(i)] : Rat(0); }
  Rat lead() const { return c_.empty() ? Rat(0) : c_.back(); }

  Rat operator()(const Rat& x) const;
  std::complex<double> operator()(std::complex<double> x) const;

  QPoly monic() const;
  QPoly derivative() const;
  // Integer polynomial with content 1 and positive leading coefficient.
  std::vector<mpz_class> primitive() const;

  QPoly& operator+=(const QPoly& o);
  QPoly& operator-=(const QPoly& o);
  friend QPoly operator+(QPoly a, const QPoly& b) { return a += b; }
  friend QPoly operator-(QPoly a, const QPoly& b) { return a -= b; }
  friend QPoly operator*(const QPoly& a, const QPoly& b);
  friend QPoly operator*(const Rat& s, const QPoly& a);
  friend bool operator==(const QPoly& a, const QPoly& b) { return a.c_ == b.c_; }

  std::string to_string() const;

 private:
  void trim();
  std::vector<Rat> c_;
};

void divmod(const QPoly& a, const QPoly& b, QPoly& q, QPoly& r);
QPoly operator%(const QPoly& a, const QPoly& b);
QPoly gcd(QPoly a, QPoly b);  // monic, or zero
bool divides(const QPoly& b, const QPoly& a);
Rat resultant(const QPoly& a, const QPoly& b);
// Unique polynomial of degree < xs.size() through the points.
QPoly interpolate(const std::vector<Rat>& xs, const std::vector<Rat>& ys);
// f(p(z)) mod m; m may be zero for no reduction.
QPoly compose_mod(const MonicPoly& f, const QPoly& p, const QPoly& m);
// f^n(z) as an exact polynomial of degree d^n.
QPoly iterate(const MonicPoly& f, int n);

}  // namespace adyn
