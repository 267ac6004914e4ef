#include "arithdyn/roots.hpp"

#include <algorithm>

namespace adyn {

namespace {

double cauchy_radius(const std::vector<cplx>& c) {
  double lead = std::abs(c.back()), r = 0.0;
  for (size_t i = 0; i + 1 < c.size(); ++i) r = std::max(r, std::abs(c[i]) / lead);
  return 1.0 + r;
}

// Fujiwara-style start radius: max |c_i/c_n|^{1/(n-i)}
double start_radius(const std::vector<cplx>& c) {
  size_t n = c.size() - 1;
  double lead = std::abs(c.back()), r = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double a = std::abs(c[i]) / lead;
    if (a > 0) r = std::max(r, std::pow(a, 1.0 / static_cast<double>(n - i)));
  }
  return r > 0 ? r : 1.0;
}

}  // namespace

std::vector<cplx> polynomial_roots(const std::vector<cplx>& c, std::mt19937_64& rng) {
  if (c.size() < 2 || c.back() == cplx(0.0, 0.0)) throw std::invalid_argument("polynomial_roots: bad input");
  int n = static_cast<int>(c.size()) - 1;
  if (n == 1) return {-c[0] / c[1]};
  auto ratio = [&](cplx z) {
    cplx p = c.back(), dp(0.0, 0.0);
    for (int i = n - 1; i >= 0; --i) {
      dp = dp * z + p;
      p = p * z + c[static_cast<size_t>(i)];
    }
    return p / dp;
  };
  double r = std::min(start_radius(c), cauchy_radius(c));
  auto z = aberth_roots(ratio, n, r, rng);
  // Newton polish
  for (auto& w : z)
    for (int k = 0; k < 3; ++k) {
      cplx step = ratio(w);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) break;
      w -= step;
    }
  return z;
}

std::vector<cplx> preimages(const MonicPoly& f, cplx c, std::mt19937_64& rng) {
  const auto& a = f.complex_coeffs();
  if (f.degree() == 2) {
    // w = -a1/2 +- sqrt(a1^2/4 - a0 + c)
    cplx h = 0.5 * a[1];
    cplx s = std::sqrt(h * h - a[0] + c);
    return {-h + s, -h - s};
  }
  std::vector<cplx> coeffs(a.begin(), a.end());
  coeffs[0] -= c;
  coeffs.emplace_back(1.0, 0.0);
  return polynomial_roots(coeffs, rng);
}

cplx periodic_ratio(const MonicPoly& f, int p, cplx z) {
  // Once |f^k(z)| is huge, f(w) ~ w^d and the log-derivative (f^k)'/f^k
  // just gains a factor d per step.
  const double d = f.degree();
  const double big = std::pow(1e250, 1.0 / d);
  cplx w = z, dw(1.0, 0.0);
  for (int k = 0; k < p; ++k) {
    if (std::abs(w) > big) {
      cplx q = dw / w;
      for (int r = k; r < p; ++r) q *= d;
      return 1.0 / q;
    }
    cplx fw, dfw;
    f.eval_with_derivative(w, fw, dfw);
    dw = dfw * dw;
    w = fw;
  }
  return (w - z) / (dw - 1.0);
}

}  // namespace adyn
