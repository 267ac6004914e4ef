#include "arithdyn/poly.hpp"
#include "arithdyn/qpoly.hpp"

#include "doctest.h"

#include <cmath>
#include <map>

using namespace adyn;

TEST_SUITE("poly_space") {

TEST_CASE("parsing") {
  auto f = MonicPoly::parse("z^3 + (3/4)z + 7");
  CHECK(f.degree() == 3);
  CHECK(f.coeff(0) == Rat(7));
  CHECK(f.coeff(1) == Rat(3, 4));
  CHECK(f.coeff(2) == Rat(0));
  CHECK(f.coeff(3) == Rat(1));
  CHECK(MonicPoly::parse("x^2+1/5").coeff(0) == Rat(1, 5));
  CHECK(MonicPoly::parse("z^2 + (1/7)*z + 1/11").coeff(1) == Rat(1, 7));
  CHECK(MonicPoly::parse(f.to_string()) == f);
  CHECK_THROWS(MonicPoly::parse("2z^2+1"));
  CHECK_THROWS(MonicPoly::parse("z+1"));
  CHECK_THROWS(MonicPoly::parse("z^2 +"));
  CHECK(QPoly::parse("2z^2 - 3").coeff(2) == Rat(2));
}

TEST_CASE("local profiles") {
  auto inf = PlaceQ::infinity();
  auto z2 = MonicPoly::power(2);
  auto lp = local_profile(z2, inf);
  CHECK(radius_at(z2, inf) == doctest::Approx(3.0));
  CHECK(lp.log_M.is_zero());

  auto f = MonicPoly::parse("z^2 + 1/2");
  auto l2 = local_profile(f, PlaceQ::prime(2));
  CHECK(l2.log_M == LogValue::log_prime(2));
  CHECK(l2.reduction == Reduction::bad);
  CHECK(l2.log_R == LogValue::log_prime(2, Rat(1, 2)));
  CHECK(radius_at(f, PlaceQ::prime(2)) == doctest::Approx(std::sqrt(2.0)));

  auto g = MonicPoly::parse("z^3 + 5z");
  CHECK(explicit_good(g, 5));
  CHECK(local_profile(g, PlaceQ::prime(5)).log_M.is_zero());
}

TEST_CASE("polynomial height") {
  CHECK(height(MonicPoly::power(2)).is_zero());
  CHECK(height(MonicPoly::parse("z^2 + 1/2")) == LogValue::log_prime(2));
  CHECK(height(MonicPoly::parse("z^3 + (3/4)z + 7")) == LogValue::log_int(28));
}

TEST_CASE("ordinary pairs") {
  auto f = MonicPoly::parse("z^2+1/5");
  auto g = MonicPoly::parse("z^2+(1/7)z+1/11");
  CHECK(is_ordinary(f, g, 11, 0.2).ordinary);
  auto r = is_ordinary(f, f, 11, 0.2);
  CHECK_FALSE(r.ordinary);
  CHECK(r.witness.find("gcd") != std::string::npos);
  auto r2 = is_ordinary(MonicPoly::parse("z^2+2"), g, 11, 0.1);
  CHECK_FALSE(r2.ordinary);
  CHECK(r2.witness.find("rad") != std::string::npos);
  CHECK_THROWS(is_ordinary(g, f, 11, 0.2));  // g is not centered
  CHECK_THROWS(is_ordinary(f, g, 4, 0.2));   // outside the height box
}

TEST_CASE("place classification") {
  auto prof = classify_places(MonicPoly::parse("z^2+1/5"), MonicPoly::parse("z^2+(1/7)z+1/11"));
  REQUIRE(prof.places.size() == 3);
  CHECK(prof.find(5)->assoc->to_string() == "a0");
  CHECK(prof.find(7)->assoc->to_string() == "b1");
  CHECK(prof.find(11)->assoc->to_string() == "b0");

  auto prof2 = classify_places(MonicPoly::parse("z^2+1/6"), MonicPoly::parse("z^2+1/10"));
  REQUIRE(prof2.places.size() == 3);
  CHECK_FALSE(prof2.find(2)->good());
  CHECK(prof2.find(3)->assoc->to_string() == "a0");
  CHECK(prof2.find(5)->assoc->to_string() == "b0");

  CHECK(classify_places(MonicPoly::power(2), MonicPoly::power(2)).places.empty());
}

TEST_CASE("sampling the height box") {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 500; ++t) {
    auto f = adyn::sample(4, 1, true, std::nullopt, rng);
    CHECK(f.centered());
    for (auto& a : f.lower()) CHECK((a == Rat(0) || a == Rat(1) || a == Rat(-1)));
  }
  SliceSpec s;
  s.fixed[1] = Rat(0);
  for (int t = 0; t < 200; ++t) CHECK(adyn::sample(3, 10, false, s, rng).coeff(1) == Rat(0));
  SliceSpec bad;
  bad.fixed[0] = Rat(1);
  CHECK_THROWS(adyn::sample(3, 10, false, bad, rng));
}

TEST_CASE("constant coefficient is uniform on the height box") {
  std::mt19937_64 rng(17);
  std::map<Rat, long> hist;
  const long n = 100000;
  for (long t = 0; t < n; ++t) ++hist[adyn::sample(2, 10, true, std::nullopt, rng).coeff(0)];
  const long cells = static_cast<long>(count_rationals_upto(10));
  CHECK(static_cast<long>(hist.size()) == cells);
  double e = static_cast<double>(n) / cells, chi2 = 0;
  for (auto& [x, k] : hist) chi2 += (k - e) * (k - e) / e;
  // 126 degrees of freedom, 0.1% critical value
  CHECK(chi2 < 181.0);
}

TEST_CASE("evaluation and iteration") {
  auto f = MonicPoly::parse("z^2 - 2");
  CHECK(f(Rat(3)) == Rat(7));
  CHECK(std::abs(f(cplx(0, 1)) - cplx(-3, 0)) < 1e-15);
  auto f2 = iterate(f, 2);
  CHECK(f2.degree() == 4);
  CHECK(f2(Rat(3)) == Rat(47));
  QPoly a = QPoly::parse("z^3 - z"), b = QPoly::parse("z^2 - 1");
  CHECK(a % b == QPoly());
  CHECK(gcd(a, QPoly::parse("z^2 + z")) == QPoly::parse("z^2 + z"));
  // Res(z^2 - 2, z^2 - 3) = prod (r^2 - 3) over r = +-sqrt2 = 1
  CHECK(resultant(QPoly::parse("z^2 - 2"), QPoly::parse("z^2 - 3")) == Rat(1));
}

}
