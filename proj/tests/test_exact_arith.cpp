#include "arithdyn/log_value.hpp"
#include "arithdyn/rat.hpp"

#include "doctest.h"

#include <cmath>
#include <numeric>

using namespace adyn;

TEST_SUITE("exact_arith") {

TEST_CASE("rational parsing and arithmetic") {
  CHECK(Rat::parse("6/-4") == Rat(-3, 2));
  CHECK(Rat::parse("-7") == Rat(-7));
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(2, 3).pow(-2) == Rat(9, 4));
  CHECK(Rat(-5, 7).abs() == Rat(5, 7));
  CHECK(Rat(1, 2) < Rat(2, 3));
  CHECK_THROWS(Rat::parse("1/0"));
  CHECK_THROWS(Rat::parse("abc"));
  CHECK_THROWS(Rat(0).inverse());
}

TEST_CASE("weil height") {
  CHECK(weil_height(Rat(3, 4)) == LogValue::log_int(4));
  CHECK(std::fabs(weil_height(Rat(3, 4)).value() - std::log(4.0)) < 1e-15);
  CHECK(weil_height(Rat(0)).is_zero());
  CHECK(weil_height(Rat(7, 2)) == LogValue::log_prime(7));
}

TEST_CASE("absolute values") {
  CHECK(abs_at(Rat(1, 2), PlaceQ::prime(2)) == 2.0);
  CHECK(abs_at(Rat(5), PlaceQ::prime(5)) == doctest::Approx(0.2));
  CHECK(abs_at(Rat(6), PlaceQ::prime(5)) == 1.0);
  CHECK(abs_at(Rat(-3, 2), PlaceQ::infinity()) == 1.5);
  CHECK_THROWS(PlaceQ::prime(4));
  CHECK(valuation(Rat(12, 5), 2) == 2);
  CHECK(valuation(Rat(12, 5), 5) == -1);
  CHECK_THROWS(valuation(Rat(0), 3));
}

TEST_CASE("radical and factorization") {
  CHECK(radical(std::uint64_t{12}) == 6);
  CHECK(radical(std::uint64_t{1}) == 1);
  CHECK(radical(std::uint64_t{360}) == 30);
  for (std::uint64_t n : {2ULL, 30ULL, 2310ULL, 510510ULL}) CHECK(radical(n) == n);
  mpz_class n = mpz_class("1000003") * mpz_class("1000033") * 8;
  auto fac = factor(n);
  REQUIRE(fac.size() == 3);
  CHECK(fac[0] == PrimePower{2, 3});
  CHECK(fac[1] == PrimePower{1000003, 1});
  CHECK(fac[2] == PrimePower{1000033, 1});
  CHECK(radical(n) == mpz_class(2) * 1000003 * 1000033);
  CHECK_THROWS(factor(mpz_class(0)));
  // a prime above 2^64
  CHECK_THROWS(factor(mpz_class("18446744073709551629")));
}

TEST_CASE("factorization reproduces random integers") {
  std::mt19937_64 rng(7);
  for (int t = 0; t < 200; ++t) {
    mpz_class n = (rng() >> 20) + 1;
    mpz_class prod = 1;
    std::uint64_t last = 0;
    for (auto& pe : factor(n)) {
      CHECK(is_prime(pe.p));
      CHECK(pe.p > last);
      last = pe.p;
      mpz_class pp;
      mpz_ui_pow_ui(pp.get_mpz_t(), pe.p, pe.e);
      prod *= pp;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("product formula") {
  CHECK(product_formula_defect_exact(Rat(6, 35)).is_zero());
  CHECK(product_formula_defect(Rat(1)) == 0.0);
  std::mt19937_64 rng(11);
  for (int t = 0; t < 10000; ++t) {
    Rat x = sample_rational(100000, rng);
    if (x.is_zero()) continue;
    CHECK(std::fabs(product_formula_defect(x)) < 1e-12);
  }
}

TEST_CASE("log values") {
  LogValue a = LogValue::log_rat(Rat(12, 5));
  CHECK(a.coeff(2) == Rat(2));
  CHECK(a.coeff(3) == Rat(1));
  CHECK(a.coeff(5) == Rat(-1));
  CHECK(std::fabs(a.value() - std::log(2.4)) < 1e-15);
  CHECK((a - a).is_zero());
  CHECK((a * Rat(1, 2) + a * Rat(1, 2)) == a);
  CHECK(LogValue::log_prime(7, Rat(2, 3)).single_prime()->second == Rat(2, 3));
  CHECK(!(a.single_prime()));
  CHECK(log_plus_abs_at(Rat(1, 9), PlaceQ::prime(3)) == LogValue::log_prime(3, Rat(2)));
  CHECK(log_plus_abs_at(Rat(9), PlaceQ::prime(3)).is_zero());
}

TEST_CASE("counting rationals of bounded height") {
  CHECK(count_rationals_upto(1) == 3);
  CHECK(count_rationals_upto(2) == 7);
  CHECK(count_rationals_upto(10) == 127);
  // independent gcd enumeration
  CHECK(count_rationals_upto(100) == 12175);
  double main_term = 2.0 * 100 * 100 / (M_PI * M_PI / 6);
  CHECK(std::fabs(count_rationals_upto(100) / main_term - 1) < 0.02);
}

TEST_CASE("sampling rationals") {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 2000; ++t) {
    Rat x = sample_rational(5, rng);
    CHECK(abs(x.num()) <= 5);
    CHECK(x.den() <= 5);
  }
  auto a = stream_rng(42, 9), b = stream_rng(42, 9), c = stream_rng(42, 10);
  CHECK(a() == b());
  CHECK(stream_rng(42, 9)() != c());
}

}
