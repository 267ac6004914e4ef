#include "arithdyn/heights.hpp"

#include "doctest.h"

#include <cmath>

using namespace adyn;

namespace {

constexpr double kArcsineLogPlus = 0.32306594721945051409;
// arccosh(sqrt(5)/2): G_{z^2-2} at +-sqrt 5
constexpr double kChebyshevSqrt5 = 0.48121182505960344750;

}  // namespace

TEST_SUITE("heights_pairing") {

TEST_CASE("canonical heights of rational points") {
  for (int d = 2; d <= 4; ++d) {
    auto h = canonical_height(MonicPoly::power(d), Rat(2));
    CHECK(h.exact == LogValue::log_prime(2));
    CHECK(h.numeric == 0.0);
  }
  auto cheb = MonicPoly::parse("z^2 - 2");
  auto h2 = canonical_height(cheb, Rat(2));
  CHECK(h2.preperiodic);
  CHECK(h2.value() == 0.0);
  auto h3 = canonical_height(cheb, Rat(3));
  CHECK(std::fabs(h3.value() - std::log((3 + std::sqrt(5.0)) / 2)) < 1e-11);
  CHECK(canonical_height(cheb, Rat(-1)).preperiodic);
}

TEST_CASE("canonical height of a power map is the Weil height") {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 100; ++t) {
    Rat x = sample_rational(1000, rng);
    auto h = canonical_height(MonicPoly::power(2 + t % 3), x);
    CHECK(h.value() == doctest::Approx(weil_height(x).value()).epsilon(1e-14));
    if (!h.preperiodic) CHECK(h.exact == weil_height(x));
  }
}

TEST_CASE("canonical height scales under f") {
  std::mt19937_64 rng(22);
  for (int t = 0; t < 40; ++t) {
    auto f = adyn::sample(2 + t % 2, 6, true, std::nullopt, rng);
    Rat x = sample_rational(6, rng);
    auto a = canonical_height(f, x), b = canonical_height(f, f(x));
    double slack = b.err + f.degree() * a.err + 1e-9;
    CHECK(std::fabs(b.value() - f.degree() * a.value()) <= slack);
  }
}

TEST_CASE("bad place local heights are exact on escape") {
  // at p = 3: f(1/2) = 7/12 has |.|_3 = 3 > 3^{1/2}
  auto h = canonical_height(MonicPoly::parse("z^2 + 1/3"), Rat(1, 2));
  CHECK(h.exact.coeff(3) == Rat(1, 2));
  CHECK(h.exact.coeff(2) == Rat(1));
}

TEST_CASE("irreducibility certificates") {
  CHECK(irreducible_mod_some_prime(QPoly::parse("z^2 - 2")));
  CHECK(irreducible_mod_some_prime(QPoly::parse("z^3 - z - 1")));
  CHECK_FALSE(irreducible_mod_some_prime(QPoly::parse("z^4 - 5z^2 + 6")));
  // irreducible over Q but reducible modulo every prime
  CHECK_FALSE(irreducible_mod_some_prime(QPoly::parse("z^4 + 1")));
  CHECK_THROWS(AlgebraicPoint::from_poly(QPoly::parse("z^2 - 2z + 1")));
}

TEST_CASE("canonical heights of algebraic points") {
  auto sqrt2 = AlgebraicPoint::from_poly(QPoly::parse("z^2 - 2"));
  CHECK(sqrt2.irreducible_verified);
  auto h = canonical_height_alg(MonicPoly::power(2), sqrt2, 8);
  CHECK(std::fabs(h.value - 0.5 * std::log(2.0)) <= h.err);
  CHECK(std::fabs(h.value - 0.5 * std::log(2.0)) < 1e-9);

  auto inv = AlgebraicPoint::from_poly(QPoly::parse("2z^2 - 1"));
  auto hi = canonical_height_alg(MonicPoly::power(3), inv, 5);
  CHECK(std::fabs(hi.value - 0.5 * std::log(2.0)) < 1e-9);

  auto phi = AlgebraicPoint::from_poly(QPoly::parse("z^2 - z - 1"));
  auto hp = canonical_height_alg(MonicPoly::parse("z^2 - 1"), phi, 3);
  CHECK(hp.preperiodic);
  CHECK(hp.value == 0.0);

  auto r5 = AlgebraicPoint::from_poly(QPoly::parse("z^2 - 5"));
  auto hc = canonical_height_alg(MonicPoly::parse("z^2 - 2"), r5, 9);
  CHECK(std::fabs(hc.value - kChebyshevSqrt5) <= hc.err);
  CHECK(std::fabs(hc.value - kChebyshevSqrt5) < 1e-6);

  CHECK_THROWS_AS(canonical_height_alg(MonicPoly::power(2), sqrt2, 13), std::length_error);
}

TEST_CASE("algebraic heights are consistent across depths") {
  auto f = MonicPoly::parse("z^2 + 1");
  auto x = AlgebraicPoint::from_poly(QPoly::parse("z^3 - z - 1"));
  auto a = canonical_height_alg(f, x, 6), b = canonical_height_alg(f, x, 7);
  CHECK(std::fabs(a.value - b.value) <= a.err + b.err);
  CHECK(b.err < a.err);
}

TEST_CASE("local pairings") {
  auto f = MonicPoly::parse("z^2+1/5"), g = MonicPoly::parse("z^2+(1/7)z+1/11");
  auto e5 = local_pairing(f, g, PlaceQ::prime(5));
  CHECK(e5.tag == PairingTag::exact);
  CHECK(e5.provenance == Provenance::good_assoc);
  CHECK(e5.lo == LogValue::log_prime(5, Rat(1, 2)));
  CHECK(e5.hi == e5.lo);
  auto e3 = local_pairing(f, g, PlaceQ::prime(3));
  CHECK(e3.lo.is_zero());
  CHECK(e3.hi.is_zero());

  auto a = MonicPoly::parse("z^2+1/6"), b = MonicPoly::parse("z^2+1/10");
  auto e2 = local_pairing(a, b, PlaceQ::prime(2));
  CHECK(e2.tag == PairingTag::interval);
  CHECK(e2.lo.is_zero());
  CHECK(e2.hi == LogValue::log_prime(2));
}

TEST_CASE("global pairings") {
  std::mt19937_64 rng(23);
  auto cheb = global_pairing(MonicPoly::power(2), MonicPoly::parse("z^2 - 2"), 20000, rng);
  CHECK(cheb.finite_lo.is_zero());
  CHECK(cheb.finite_hi.is_zero());
  CHECK(std::fabs(cheb.estimate() - kArcsineLogPlus) < 4 * cheb.arch.se + 1e-3);

  auto f = MonicPoly::parse("z^2 + 1/6");
  auto self = global_pairing(f, f, 5000, rng);
  for (auto& e : self.entries)
    if (!e.v.is_archimedean()) {
      CHECK(e.provenance == Provenance::identical);
      CHECK(e.hi.is_zero());
    }
  CHECK(std::fabs(self.estimate()) < 2 * self.arch.se + 1e-9);

  auto p = MonicPoly::parse("z^2+1/5"), q = MonicPoly::parse("z^2+(1/7)z+1/11");
  auto r = global_pairing(p, q, 5000, rng);
  CHECK(r.total_lo >= r.good_sum().value());
  CHECK(r.good_sum() == (LogValue::log_prime(5) + LogValue::log_prime(7) + LogValue::log_prime(11)) * Rat(1, 2));
}

TEST_CASE("sandwich bounds") {
  std::mt19937_64 rng(24);
  for (auto& b : sandwich_check(MonicPoly::power(2), MonicPoly::power(2), 10, 2000, rng)) CHECK(b.satisfied);
  for (int t = 0; t < 100; ++t) {
    auto f = adyn::sample(3, 20, true, std::nullopt, rng), g = adyn::sample(3, 20, false, std::nullopt, rng);
    for (auto& b : sandwich_check(f, g, 20, 1000, rng)) CHECK(b.satisfied);
  }
  auto f = MonicPoly::parse("z^3 + (9999/9973)z + 1/9967");
  auto g = MonicPoly::parse("z^3 + (10000/9949)z^2 - (9931/9941)z + 10000/9929");
  for (auto& b : sandwich_check(f, g, 10000, 2000, rng)) CHECK(b.satisfied);
  CHECK_THROWS(sandwich_check(g, f, 10000, 2000, rng));
}

TEST_CASE("fudge minimum") {
  CHECK(fudge_min(3, 1, Rat(1)) == Rat(1, 4));
  CHECK(fudge_min(3, 2, Rat(1)) == Rat(0));
  CHECK(fudge_min(5, 3, Rat(1)) == Rat(1, 12));
  for (int d = 2; d <= 8; ++d)
    for (int j = 1; j < d; ++j) {
      Rat a = Rat(1, 2 * j) * (Rat(1) - Rat(1, d - j)), b = Rat(1, 2 * (d - j));
      CHECK(fudge_min(d, j, Rat(3)) == Rat(3) * min(a, b));
    }
}

TEST_CASE("equidistribution radii") {
  CHECK(adelic_radius(1.0, 2, 100) == doctest::Approx(1.0 / 200));
  auto f = MonicPoly::parse("z^2 + 1/6"), g = MonicPoly::parse("z^2 + 1/35");
  auto r = equidistribution_bounds(f, g, 1000);
  bool saw_good = false;
  for (auto& e : r.radii_f)
    if (e.explicit_good) {
      saw_good = true;
      CHECK(e.eps == 1.0);
    }
  CHECK(saw_good);
  auto r2 = equidistribution_bounds(f, g, 2000);
  CHECK(r2.rhs_shape / r.rhs_shape == doctest::Approx(0.5).epsilon(0.1));
}

}
