#include <doctest.h>

#include <cmath>

#include "ecoinv/errors.hpp"
#include "ecoinv/specfun.hpp"

#ifdef ECOINV_HAVE_BOOST_MP
#include "oracles/bessel_mp.hpp"
#endif

using namespace ecoinv;

namespace {

double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }
double rel_err(cplx a, cplx b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// First zero by bisection on a sign change.
template <class F>
double bisect(F f, double a, double b) {
  double fa = f(a);
  for (int i = 0; i < 200; ++i) {
    const double m = 0.5 * (a + b);
    const double fm = f(m);
    if ((fm < 0) == (fa < 0)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TEST_SUITE("specfun") {
  TEST_CASE("values at the origin") {
    CHECK(specfun::bessel_j(0, 0.0) == 1.0);
    CHECK(specfun::bessel_j(1, 0.0) == 0.0);
    CHECK(specfun::bessel_j(5, 0.0) == 0.0);
  }

  TEST_CASE("reference values") {
    CHECK(rel_err(specfun::bessel_y(0, 1.0), 0.08825696421567696) < 1e-13);
    const cplx h = specfun::hankel1(0, 1.0);
    CHECK(rel_err(h, cplx(0.7651976865579666, 0.08825696421567696)) < 1e-13);
    CHECK(std::abs(specfun::bessel_j(0, 2.404825557695773)) < 1e-10);
    CHECK(std::abs(specfun::bessel_y(0, 0.8935769662791675)) < 1e-9);
  }

  TEST_CASE("zeros located by bisection") {
    const double j0 = bisect([](double x) { return specfun::bessel_j(0, x); }, 2.0, 3.0);
    CHECK(j0 == doctest::Approx(2.404825557695773).epsilon(1e-12));
    const double y0 = bisect([](double x) { return specfun::bessel_y(0, x); }, 0.5, 1.5);
    CHECK(y0 == doctest::Approx(0.8935769662791675).epsilon(1e-12));
  }

  TEST_CASE("hankel definition and derivative identity") {
    for (double x : {0.3, 1.0, 7.5, 42.0, 180.0}) {
      for (int n = 0; n <= 6; ++n) {
        const cplx h = specfun::hankel1(n, x);
        CHECK(h.real() == specfun::bessel_j(n, x));
        CHECK(h.imag() == specfun::bessel_y(n, x));
      }
      CHECK(rel_err(specfun::hankel1_deriv(0, x), -specfun::hankel1(1, x)) < 1e-14);
    }
  }

  TEST_CASE("Y_1 diverges at the origin") {
    double prev = 0.0;
    for (double x : {1e-1, 1e-3, 1e-5, 1e-7}) {
      const double y = specfun::bessel_y(1, x);
      CHECK(y < prev);
      prev = y;
    }
    CHECK(prev < -1e6);
  }

  TEST_CASE("domain errors") {
    CHECK_THROWS_AS(specfun::bessel_y(0, 0.0), DomainError);
    CHECK_THROWS_AS(specfun::hankel1(1, -1.0), DomainError);
    CHECK_THROWS_AS(specfun::bessel_j(-1, 1.0), DomainError);
    CHECK_THROWS_AS(specfun::bessel_j(0, -0.5), DomainError);
  }

  TEST_CASE("Wronskian") {
    for (double x : {0.5, 1.0, 5.0, 20.0, 100.0}) {
      for (int n = 0; n <= 10; ++n) {
        const double w = specfun::bessel_j(n + 1, x) * specfun::bessel_y(n, x) -
                         specfun::bessel_j(n, x) * specfun::bessel_y(n + 1, x);
        CHECK(rel_err(w, 2.0 / (kPi * x)) < 1e-10);
      }
    }
  }

  TEST_CASE("three-term recurrence") {
    for (double x : {0.5, 1.0, 5.0, 20.0, 100.0}) {
      for (int n = 1; n <= 10; ++n) {
        const double lhs = specfun::bessel_j(n - 1, x) + specfun::bessel_j(n + 1, x);
        const double rhs = 2.0 * n / x * specfun::bessel_j(n, x);
        // J_n can sit near a zero; compare against the size of the terms.
        const double scale = std::abs(specfun::bessel_j(n - 1, x)) + std::abs(specfun::bessel_j(n + 1, x));
        CHECK(std::abs(lhs - rhs) <= 1e-10 * scale);
      }
    }
  }

  TEST_CASE("hankel0to3 matches single-order calls") {
    for (double x : {1e-3, 0.2, 3.0, 31.0, 199.0}) {
      const auto s = specfun::hankel1_0to3(x);
      CHECK(rel_err(s.h0, specfun::hankel1(0, x)) < 1e-13);
      CHECK(rel_err(s.h1, specfun::hankel1(1, x)) < 1e-13);
      CHECK(rel_err(s.h2, specfun::hankel1(2, x)) < 1e-13);
      CHECK(rel_err(s.h3, specfun::hankel1(3, x)) < 1e-13);
    }
  }

#ifdef ECOINV_HAVE_BOOST_MP
  TEST_CASE("multiprecision series oracle") {
    // Relative error against |H_n|, which is the quantity the kernels consume;
    // J_n and Y_n individually pass through zeros.
    const double xs[] = {1e-3, 0.05, 0.7, 3.3, 8.0, 12.5, 17.9, 24.0, 37.0, 55.5, 80.0, 121.0, 160.0, 200.0};
    for (double x : xs) {
      for (int n : {0, 1, 2, 3, 5, 8, 13}) {
        if (n >= 8 && x < 0.05) continue;  // Y_n overflows the useful range
        const cplx ref(oracle::bessel_j(n, x), oracle::bessel_y(n, x));
        const cplx got = specfun::hankel1(n, x);
        INFO("n = " << n << ", x = " << x);
        CHECK(rel_err(got, ref) < 1e-10);
        CHECK(std::abs(got.real() - ref.real()) <= 1e-12 * std::max(1.0, std::abs(ref)));
      }
    }
  }

  TEST_CASE("high orders used by the eigenvalue scan") {
    for (double x : {0.5, 4.0, 9.0, 20.0}) {
      for (int n : {20, 30, 45}) {
        const double ref = oracle::bessel_j(n, x);
        INFO("n = " << n << ", x = " << x);
        CHECK(std::abs(specfun::bessel_j(n, x) - ref) <= 1e-12 * std::abs(ref) + 1e-300);
      }
    }
  }
#endif
}
