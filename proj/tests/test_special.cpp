#include <boost/math/special_functions/bessel.hpp>
#include <boost/math/special_functions/factorials.hpp>
#include <boost/math/special_functions/laguerre.hpp>
#include <random>

#include "doctest.h"
#include "rdi/errors.hpp"
#include "rdi/special.hpp"

using namespace rdi;
using namespace rdi::special;

namespace {
double rel(double a, double b) { return std::abs(a - b) / std::max(1e-300, std::max(std::abs(a), std::abs(b))); }
}  // namespace

TEST_CASE("bessel_j against boost") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> X(0, 60);
  for (int i = 0; i < 400; ++i) {
    const int nu = static_cast<int>(rng() % 40);
    const double x = X(rng);
    const double want = boost::math::cyl_bessel_j(nu, x);
    CHECK(std::abs(bessel_j(nu, x) - want) < 1e-13 * std::max(1.0, std::abs(want)) + 1e-300);
  }
}

TEST_CASE("bessel_j known values and small argument") {
  CHECK(bessel_j(0, 0) == 1.0);
  CHECK(bessel_j(3, 0) == 0.0);
  // first zero of J_0
  CHECK(std::abs(bessel_j(0, 2.404825557695773)) < 1e-15);
  // leading term (x/2)^nu / nu!
  CHECK(rel(bessel_j(12, 1e-3), std::pow(5e-4, 12) / factorial(12)) < 1e-6);
  CHECK_THROWS_AS(bessel_j(-1, 1.0), DomainError);
  CHECK_THROWS_AS(bessel_j(2, -1.0), DomainError);
}

TEST_CASE("bessel_j_int parity for negative order and argument") {
  for (int nu = -6; nu <= 6; ++nu)
    for (double x : {0.3, 2.0, 7.5}) {
      const double pos = bessel_j_int(std::abs(nu), x);
      CHECK(bessel_j_int(nu, x) == doctest::Approx((nu < 0 && nu % 2) ? -pos : pos).epsilon(1e-15));
      CHECK(bessel_j_int(nu, -x) == doctest::Approx((nu % 2) ? -bessel_j_int(nu, x) : bessel_j_int(nu, x)));
    }
}

TEST_CASE("property: three-term Bessel recurrence") {
  for (double x : {0.5, 3.0, 11.0, 40.0})
    for (int nu = 1; nu < 30; ++nu)
      CHECK(std::abs(bessel_j(nu - 1, x) + bessel_j(nu + 1, x) - 2 * nu / x * bessel_j(nu, x)) < 1e-13);
}

TEST_CASE("laguerre against boost") {
  for (int n = 0; n <= 30; ++n)
    for (int alpha : {0, 1, 3, 7})
      for (double x : {0.0, 0.4, 2.5, 9.0, 30.0}) {
        const double want = boost::math::laguerre(n, alpha, x);
        CHECK(std::abs(laguerre(n, alpha, x) - want) < 1e-11 * std::max(1.0, std::abs(want)));
      }
}

TEST_CASE("laguerre closed forms for non-integer alpha") {
  const double a = 0.37, x = 1.3;
  CHECK(laguerre(0, a, x) == 1.0);
  CHECK(laguerre(1, a, x) == doctest::Approx(1 + a - x).epsilon(1e-15));
  CHECK(laguerre(2, a, x) == doctest::Approx((x * x - 2 * (a + 2) * x + (a + 1) * (a + 2)) / 2).epsilon(1e-14));
}

TEST_CASE("terminating 1F1 against the Laguerre relation and a long-double series") {
  CHECK(hyp1f1_poly(0, 1.5, 2.0) == 1.0);
  for (int n = 1; n <= 12; ++n) {
    // 1F1(-n; a + 1; x) = n! L_n^a(x) / (a + 1)_n
    for (int a : {0, 1, 5})
      for (double x : {0.1, 1.0, 4.0}) {
        const double want = boost::math::factorial<double>(n) * boost::math::laguerre(n, a, x) /
                            boost::math::rising_factorial(double(a + 1), n);
        CHECK(std::abs(hyp1f1_poly(n, a + 1, x) - want) < 1e-11 * std::max(1.0, std::abs(want)));
      }
    for (double b : {0.5, 2.5, 6.3})
      for (double x : {0.1, 1.0, 4.0}) {
        long double term = 1, sum = 1;
        for (int k = 0; k < n; ++k) {
          term *= (k - n) * (long double)x / ((b + k) * (k + 1));
          sum += term;
        }
        CHECK(std::abs(hyp1f1_poly(n, b, x) - double(sum)) < 1e-11 * std::max(1.0L, std::abs(sum)));
      }
  }
}

TEST_CASE("terminating Tricomi U low orders") {
  const double b = 1.7, x = 0.9;
  CHECK(tricomi_u_poly(0, b, x) == doctest::Approx(1.0));
  CHECK(tricomi_u_poly(1, b, x) == doctest::Approx(x - b).epsilon(1e-14));
  CHECK(tricomi_u_poly(2, b, x) == doctest::Approx(x * x - 2 * (b + 1) * x + b * (b + 1)).epsilon(1e-14));
}

TEST_CASE("factorials, binomials and Pochhammer symbols") {
  for (int n = 0; n <= 30; ++n) CHECK(rel(factorial(n), boost::math::factorial<double>(n)) < 1e-15);
  CHECK(binomial(10, 3) == doctest::Approx(120));
  CHECK(binomial(2.5, 2) == doctest::Approx(2.5 * 1.5 / 2));
  CHECK(pochhammer(3, 4) == doctest::Approx(3 * 4 * 5 * 6));
  CHECK(pochhammer(0.5, 0) == 1.0);
}
