// Simultaneous root finding (Aberth) on Newton-ratio evaluators.
#pragma once

#include "arithdyn/poly.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace adyn {

struct RootFailure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One Aberth sweep loop. `ratio(z)` returns p(z)/p'(z). Returns true on convergence.
template <class Ratio>
bool aberth_refine(Ratio&& ratio, std::vector<cplx>& z, double tol, int max_iter) {
  const size_t n = z.size();
  std::vector<bool> done(n, false);
  for (int it = 0; it < max_iter; ++it) {
    bool all = true;
    for (size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      cplx N = ratio(z[i]);
      if (!std::isfinite(N.real()) || !std::isfinite(N.imag())) {
        z[i] *= 0.5;
        all = false;
        continue;
      }
      cplx s(0.0, 0.0);
      for (size_t j = 0; j < n; ++j)
        if (j != i) s += 1.0 / (z[i] - z[j]);
      cplx step = N / (1.0 - N * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) step = N;
      z[i] -= step;
      if (std::abs(step) <= tol * (1.0 + std::abs(z[i])))
        done[i] = true;
      else
        all = false;
    }
    if (all) return true;
  }
  return false;
}

// All n roots for the evaluator, starting on a circle of the given radius,
// restarting with random perturbations on failure.
template <class Ratio>
std::vector<cplx> aberth_roots(Ratio&& ratio, int n, double radius, std::mt19937_64& rng,
                               double tol = 1e-13, int max_iter = 400, int restarts = 6) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const double two_pi = 6.283185307179586;
  double offset = 0.4;
  double r = radius;
  for (int attempt = 0; attempt <= restarts; ++attempt) {
    std::vector<cplx> z(static_cast<size_t>(n));
    for (int k = 0; k < n; ++k) z[static_cast<size_t>(k)] = std::polar(r, two_pi * (k + offset) / n);
    if (aberth_refine(ratio, z, tol, max_iter)) return z;
    offset = u(rng);
    r = radius * (0.5 + u(rng));
  }
  throw RootFailure("root finder did not converge");
}

// Roots of sum c[i] z^i (c.back() != 0).
std::vector<cplx> polynomial_roots(const std::vector<cplx>& c, std::mt19937_64& rng);
// All d solutions w of f(w) = c, with multiplicity.
std::vector<cplx> preimages(const MonicPoly& f, cplx c, std::mt19937_64& rng);
// Newton ratio of f^p(z) - z, overflow safe.
cplx periodic_ratio(const MonicPoly& f, int p, cplx z);

}  // namespace adyn
