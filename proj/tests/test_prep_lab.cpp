#include "arithdyn/heights.hpp"
#include "arithdyn/prep.hpp"

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

using namespace adyn;

TEST_SUITE("prep_lab") {

TEST_CASE("disjointness certificates") {
  auto w = disjoint_certificate(MonicPoly::power(2), MonicPoly::parse("z^2 + 1/2"));
  REQUIRE(w);
  CHECK(w->p == 2);
  CHECK_FALSE(disjoint_certificate(MonicPoly::parse("z^2 + 1/3"), MonicPoly::parse("z^2 + 1/3")));
  CHECK_FALSE(disjoint_certificate(MonicPoly::power(2), MonicPoly::parse("z^2 - 2")));
  // symmetric in the pair
  CHECK(disjoint_certificate(MonicPoly::parse("z^2 + 1/2"), MonicPoly::power(2)));
  // a large non-constant coefficient spoils the condition
  CHECK_FALSE(disjoint_certificate(MonicPoly::power(3), MonicPoly::parse("z^3 + (1/2)z + 1/2")));
}

TEST_CASE("preperiodic clusters of the squaring map") {
  auto c = preperiodic_complex(MonicPoly::power(2), 5, 4, 1e-8);
  bool zero = false;
  for (auto& p : c) {
    double r = std::abs(p.z);
    CHECK((r < 1e-9 || std::fabs(r - 1) < 1e-9));
    if (r < 1e-9) zero = true;
  }
  CHECK(zero);
  // preperiodic points with preperiod + period <= 5: 0 together with roots of unity of
  // order 2^k (2^(5-k) - 1), with k + period <= 5
  CHECK(c.size() > 20);
  CHECK_THROWS(preperiodic_complex(MonicPoly::power(2), 12, 1, 1e-8));
}

TEST_CASE("preperiodic clusters of the Chebyshev map") {
  auto f = MonicPoly::parse("z^2 - 2");
  auto c = preperiodic_complex(f, 3, 2, 1e-8);
  auto has = [&](double x, int m, int n) {
    for (auto& p : c)
      if (std::abs(p.z - cplx(x, 0)) < 1e-9) return p.m == m && p.n == n;
    return false;
  };
  CHECK(has(2, 1, 0));
  CHECK(has(-1, 1, 0));
  CHECK(has(1, 2, 1));
  CHECK(has(0, 3, 2));
  CHECK(has(-2, 2, 1));
  std::map<std::pair<int, int>, int> per_tag;
  for (auto& p : c) {
    ++per_tag[{p.m, p.n}];
    CHECK(std::fabs(p.z.imag()) < 1e-9);
  }
  for (auto& [tag, k] : per_tag) CHECK(k <= (1 << tag.first) + (1 << tag.second));
}

TEST_CASE("exact preperiodicity") {
  auto f = MonicPoly::parse("z^2 - 2");
  CHECK(is_preperiodic_exact(f, Rat(0)));
  CHECK(is_preperiodic_exact(f, Rat(-2)));
  CHECK_FALSE(is_preperiodic_exact(f, Rat(3)));
  CHECK_FALSE(is_preperiodic_exact(f, Rat(1, 2)));
  CHECK(best_rational(0.3333333333333333, 1000) == Rat(1, 3));
  CHECK(best_rational(-2.5, 1000) == Rat(-5, 2));
}

TEST_CASE("Chebyshev against the squaring map") {
  auto cert = prep_intersect(MonicPoly::power(2), MonicPoly::parse("z^2 - 2"));
  CHECK(cert.verdict == Verdict::intersection);
  REQUIRE(cert.points.size() == 3);
  std::set<Rat> xs;
  for (auto& p : cert.points) {
    CHECK(p.rational);
    CHECK(p.minpoly.degree() == 1);
    xs.insert(-p.minpoly.coeff(0));
    CHECK(p.hf + p.hg <= 1e-6);
  }
  CHECK(xs == std::set<Rat>{Rat(-1), Rat(0), Rat(1)});
  CHECK(cert.uncertified == 0);
}

TEST_CASE("certified disjoint pairs") {
  auto cert = prep_intersect(MonicPoly::power(2), MonicPoly::parse("z^2 + 1/2"));
  CHECK(cert.verdict == Verdict::disjoint);
  CHECK(cert.witness->p == 2);
  PrepCaps caps;
  caps.force_search = true;
  auto forced = prep_intersect(MonicPoly::power(2), MonicPoly::parse("z^2 + 1/2"), caps);
  CHECK(forced.numeric_matches == 0);
  CHECK(forced.points.empty());
  CHECK_THROWS(prep_intersect(MonicPoly::power(2), MonicPoly::power(2)));
}

TEST_CASE("same Julia set") {
  auto cert = prep_intersect(MonicPoly::power(2), MonicPoly::power(4));
  CHECK(cert.suspected_equal);
  CHECK(cert.shared_count() > 20);
  for (auto& p : cert.points) {
    CHECK(p.hf <= 1e-6);
    CHECK(p.hg <= 1e-6);
  }
  for (size_t i = 1; i < cert.matches_by_level.size(); ++i)
    CHECK(cert.matches_by_level[i] >= cert.matches_by_level[i - 1]);
}

TEST_CASE("rational preperiodic points") {
  CHECK(rational_prep(MonicPoly::parse("z^2 - 2"), 100) ==
        std::vector<Rat>{Rat(-2), Rat(-1), Rat(0), Rat(1), Rat(2)});
  CHECK(rational_prep(MonicPoly::power(2), 100) == std::vector<Rat>{Rat(-1), Rat(0), Rat(1)});
  CHECK(rational_prep(MonicPoly::parse("z^2 + 1"), 200).empty());
  // z^2 - 3/4 fixes 3/2 and -1/2
  auto q = rational_prep(MonicPoly::parse("z^2 - 3/4"), 50);
  CHECK(std::find(q.begin(), q.end(), Rat(3, 2)) != q.end());
  CHECK(std::find(q.begin(), q.end(), Rat(-1, 2)) != q.end());
  for (auto& x : q) CHECK(canonical_height(MonicPoly::parse("z^2 - 3/4"), x).preperiodic);
}

TEST_CASE("rational preperiodic sets are forward invariant") {
  std::mt19937_64 rng(31);
  for (int t = 0; t < 20; ++t) {
    auto f = adyn::sample(2, 4, false, std::nullopt, rng);
    auto s = rational_prep(f, 60);
    std::set<Rat> set(s.begin(), s.end());
    for (auto& x : s) {
      Rat y = f(x);
      if (abs(y.num()) <= 60 && y.den() <= 60) CHECK(set.count(y) == 1);
    }
  }
}

}
