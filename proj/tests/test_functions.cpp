#include <doctest.h>

#include <cmath>

#include "fraclap/functions.hpp"

using namespace fraclap;

TEST_SUITE("functions") {

TEST_CASE("factory parity holds at sampled points") {
  auto even = make_gaussian(0.5);
  auto odd = make_odd_gaussian(0.5);
  for (double x : {0.1, 0.7, 2.3}) {
    CHECK(even(x) == doctest::Approx(even(-x)));
    CHECK(odd(x) == doctest::Approx(-odd(-x)));
  }
}

TEST_CASE("derivative callbacks match finite differences") {
  for (auto f : {make_gaussian(0.3), make_poly_gaussian(0.3), make_odd_gaussian(0.3)}) {
    for (double x : {0.0, 0.4, 1.7}) {
      TestFunction nof = f;
      nof.deriv1 = nullptr;
      nof.deriv2 = nullptr;
      CHECK(f.d1(x) == doctest::Approx(nof.d1(x)).epsilon(1e-7));
      CHECK(f.d2(x) == doctest::Approx(nof.d2(x)).epsilon(1e-5));
    }
  }
}

TEST_CASE("profile taylor matches the even part near zero") {
  for (auto f : {make_gaussian(0.0), make_poly_gaussian(0.0)}) {
    for (double r : {0.05, 0.1}) {
      double t = 0.0, pw = 1.0;
      for (double a : f.profile_taylor) {
        t += a * pw;
        pw *= r * r;
      }
      CHECK(f.even_part(r) == doctest::Approx(t).epsilon(1e-8));
    }
  }
}

TEST_CASE("mollified constant: plateau, smooth edge, compact support") {
  auto m = make_mollified_constant();
  CHECK(m(0.0) == 1.0);
  CHECK(m(0.999) == 1.0);
  CHECK(m(2.0) == 0.0);
  CHECK(m(5.0) == 0.0);
  CHECK(m(1.5) > 0.0);
  CHECK(m(1.5) < 1.0);
  CHECK(m.support_radius == doctest::Approx(2.0));
}

TEST_CASE("table function: cubic spline reproduces smooth data, zero outside") {
  std::vector<double> xs, vs;
  for (int i = 0; i <= 40; ++i) {
    const double x = -3.0 + 6.0 * i / 40.0;
    xs.push_back(x);
    vs.push_back(std::exp(-0.5 * x * x));
  }
  auto f = make_from_table(xs, vs);
  CHECK(f(0.33) == doctest::Approx(std::exp(-0.5 * 0.33 * 0.33)).epsilon(1e-4));
  CHECK(f(-1.2) == doctest::Approx(std::exp(-0.5 * 1.44)).epsilon(1e-4));
  CHECK(f(3.5) == 0.0);   // beyond the documented cutoff
  CHECK(f(-3.5) == 0.0);
  CHECK_THROWS_AS(make_from_table({0.0, 1.0}, {1.0, 2.0}), std::domain_error);
  CHECK_THROWS_AS(make_from_table({0.0, 0.0, 1.0}, {1.0, 2.0, 3.0}), std::domain_error);
}

}  // TEST_SUITE
