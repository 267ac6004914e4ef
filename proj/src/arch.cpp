#include "arithdyn/arch.hpp"

#include "arithdyn/roots.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace adyn {

double green_arch(const MonicPoly& f, cplx z, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("green_arch: tol > 0");
  const double d = f.degree();
  const double R = radius_at(f, PlaceQ::infinity());
  const double Mf = std::exp(log_M_at(f, PlaceQ::infinity()).value());
  const double escape = std::max(R, 2.0 * Mf + 1.0);
  const int tol_depth = static_cast<int>(std::ceil(std::log(std::log(2.0 * R + 1.0) / tol) / std::log(d))) + 1;
  const int depth_cap = std::max(tol_depth, static_cast<int>(std::ceil(200.0 * std::log(d))));
  const double huge = std::pow(10.0, 250.0 / d);

  cplx w = z;
  double scale = 1.0;  // d^{-n}
  for (int n = 0;; ++n) {
    double r = std::abs(w);
    if (r > escape) {
      // |log|f(w)/w^d|| <= -log(1 - Mf/(r-1)), and the orbit only grows from here
      double delta = -std::log1p(-Mf / (r - 1.0));
      double tail = scale * delta / (d - 1.0);
      if (tail <= tol || r > huge) return scale * std::log(r);
    } else if (n >= depth_cap) {
      return 0.0;
    }
    w = f(w);
    scale /= d;
  }
}

EquilibriumSample equilibrium_sample(const MonicPoly& f, int N, std::mt19937_64& rng) {
  if (N < 1) throw std::invalid_argument("equilibrium_sample: N >= 1");
  const int d = f.degree();
  const double R = radius_at(f, PlaceQ::infinity());
  const int depth = static_cast<int>(std::ceil(std::log(static_cast<double>(N)) / std::log(d))) + 20;
  EquilibriumSample s;
  s.generation = depth;
  s.source = f.to_string();
  s.group = d * d;
  s.points.reserve(static_cast<size_t>(N));
  std::uniform_int_distribution<int> branch(0, d - 1);
  // Independent backward walks from R+1 with one random branch per step; the
  // last two generations are expanded in full so each group of d^2 points is
  // a complete pullback of one walk endpoint.
  while (static_cast<int>(s.points.size()) < N) {
    cplx b(R + 1.0, 0.0);
    for (int k = 0; k < depth - 2; ++k) b = preimages(f, b, rng)[static_cast<size_t>(branch(rng))];
    for (cplx c : preimages(f, b, rng))
      for (cplx w : preimages(f, c, rng))
        if (static_cast<int>(s.points.size()) < N) s.points.push_back(w);
  }
  return s;
}

cplx moment(const EquilibriumSample& s, int k) {
  if (k < 1) throw std::invalid_argument("moment: k >= 1");
  if (s.points.empty()) throw std::invalid_argument("moment: empty sample");
  cplx acc(0.0, 0.0);
  for (cplx z : s.points) acc += std::pow(z, k);
  return acc / static_cast<double>(s.points.size());
}

void write_csv(const EquilibriumSample& s, std::ostream& os) {
  os << "re,im\n";
  os.precision(17);
  for (cplx z : s.points) os << z.real() << "," << z.imag() << "\n";
}

double HolderConstants::bound(int d, double dist) const { return 3.0 * d * M * std::pow(dist, alpha); }

HolderConstants holder_constants(const MonicPoly& f) {
  HolderConstants h;
  const double d = f.degree();
  h.R = radius_at(f, PlaceQ::infinity());
  h.M = std::log(2.0 * h.R + 1.0);
  h.A = 1.5 * d * std::pow(h.R + 1.0, d - 1.0);
  h.alpha = std::log(d) / std::log(h.A);
  return h;
}

NumericEstimate mean_green(const MonicPoly& f, const EquilibriumSample& s, std::mt19937_64& rng) {
  if (s.points.empty()) throw std::invalid_argument("mean_green: empty sample");
  const size_t g = static_cast<size_t>(std::max(1, s.group));
  std::vector<double> block;
  double total = 0.0, acc = 0.0;
  size_t in_block = 0;
  for (size_t i = 0; i < s.points.size(); ++i) {
    double v = green_arch(f, s.points[i], 1e-12);
    total += v;
    acc += v;
    if (++in_block == g) {
      block.push_back(acc / static_cast<double>(g));
      acc = 0.0;
      in_block = 0;
    }
  }
  NumericEstimate e;
  e.value = total / static_cast<double>(s.points.size());
  if (block.size() < 2) return e;
  // block bootstrap over complete preimage groups
  constexpr int kResamples = 200;
  std::uniform_int_distribution<size_t> pick(0, block.size() - 1);
  double m1 = 0.0, m2 = 0.0;
  for (int b = 0; b < kResamples; ++b) {
    double m = 0.0;
    for (size_t i = 0; i < block.size(); ++i) m += block[pick(rng)];
    m /= static_cast<double>(block.size());
    m1 += m;
    m2 += m * m;
  }
  m1 /= kResamples;
  e.se = std::sqrt(std::max(0.0, m2 / kResamples - m1 * m1));
  return e;
}

ArchPairing arch_pairing(const MonicPoly& f, const MonicPoly& g, const EquilibriumSample& sf,
                         const EquilibriumSample& sg, std::mt19937_64& rng) {
  ArchPairing p;
  p.f_over_g = mean_green(f, sg, rng);
  p.g_over_f = mean_green(g, sf, rng);
  p.value = std::max(0.0, 0.5 * (p.f_over_g.value + p.g_over_f.value));
  p.se = 0.5 * std::hypot(p.f_over_g.se, p.g_over_f.se);
  // mean change of G_a when a point of sb moves by a few ulps of R_b
  auto shift = [](const MonicPoly& a, const MonicPoly& b, const EquilibriumSample& sb) {
    const double delta = 64 * std::numeric_limits<double>::epsilon() * radius_at(b, PlaceQ::infinity());
    const size_t stride = std::max<size_t>(1, sb.points.size() / 512);
    double acc = 0.0;
    size_t n = 0;
    for (size_t i = 0; i < sb.points.size(); i += stride, ++n) {
      cplx z = sb.points[i];
      double g0 = green_arch(a, z), worst = 0.0;
      for (cplx u : {cplx(1, 0), cplx(0, 1), cplx(-1, 0), cplx(0, -1)})
        worst = std::max(worst, std::fabs(green_arch(a, z + delta * u) - g0));
      acc += worst;
    }
    double trunc = 2 * std::log(2 * radius_at(b, PlaceQ::infinity()) + 2) / std::pow(b.degree(), sb.generation);
    return trunc + acc / static_cast<double>(n);
  };
  p.bias = 0.5 * (shift(f, g, sg) + shift(g, f, sf));
  return p;
}

ArchPairing arch_pairing(const MonicPoly& f, const MonicPoly& g, int N, std::mt19937_64& rng) {
  if (N < 1000) throw std::invalid_argument("arch_pairing: N >= 1000");
  auto sf = equilibrium_sample(f, N, rng);
  auto sg = equilibrium_sample(g, N, rng);
  return arch_pairing(f, g, sf, sg, rng);
}

}  // namespace adyn
