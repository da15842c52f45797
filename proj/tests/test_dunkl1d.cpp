#include <doctest.h>

#include <cmath>
#include <complex>

#include "fraclap/dunkl1d.hpp"

using namespace fraclap;
using namespace fraclap::dunkl;
using specfun::BesselKind;

namespace {

// normalized modified Bessel Gamma(nu+1)(2/z)^nu I_nu(z); even, value 1 at 0
double normalized_i(double nu, double z) {
  z = std::abs(z);
  if (z < 1e-12) return 1.0;
  return std::exp(std::lgamma(nu + 1.0) + nu * std::log(2.0 / z)) *
         specfun::bessel(BesselKind::I, nu, z);
}

// closed-form translation of the unit Gaussian:
// tau^x g(y) = exp(-(x^2+y^2)/2) [ I~_{k-1/2}(xy) - xy I~_{k+1/2}(xy)/(2k+1) ]
double gaussian_translate_closed(double k, double x, double y) {
  const double z = x * y;
  return std::exp(-0.5 * (x * x + y * y)) *
         (normalized_i(k - 0.5, z) - z / (2.0 * k + 1.0) * normalized_i(k + 0.5, z));
}

}  // namespace

TEST_SUITE("dunkl1d") {

TEST_CASE("weight") {
  CHECK(weight(2.0, DunklParams(1.0)) == doctest::Approx(4.0));
  CHECK(weight(-3.0, DunklParams(0.5)) == doctest::Approx(3.0));
  CHECK(weight(1.7, DunklParams(0.0)) == doctest::Approx(1.0));
}

TEST_CASE("kernel: normalization, classical limit, conjugation") {
  DunklParams p(0.7);
  CHECK(dunkl_kernel(0.0, 1.3, p) == std::complex<double>(1.0, 0.0));
  DunklParams p0(0.0);
  for (double l : {0.4, 1.9}) {
    for (double x : {-1.2, 0.3, 2.0}) {
      const auto e = dunkl_kernel(l, x, p0);
      CHECK(e.real() == doctest::Approx(std::cos(l * x)).epsilon(1e-13));
      CHECK(e.imag() == doctest::Approx(std::sin(l * x)).epsilon(1e-13));
    }
  }
  DunklParams p4(0.4);
  const auto a = dunkl_kernel(1.3, 0.7, p4);
  const auto b = dunkl_kernel(-1.3, 0.7, p4);
  CHECK(a.real() == doctest::Approx(b.real()).epsilon(1e-14));
  CHECK(a.imag() == doctest::Approx(-b.imag()).epsilon(1e-14));
}

TEST_CASE("kernel: modulus bounded by one on a grid") {
  for (double k : {0.0, 0.3, 0.5, 1.5, 3.0}) {
    DunklParams p(k);
    for (double l = -5.0; l <= 5.0; l += 1.25) {
      for (double x = -4.0; x <= 4.0; x += 0.8) {
        CHECK(std::abs(dunkl_kernel(l, x, p)) <= 1.0 + 1e-12);
      }
    }
  }
}

TEST_CASE("dunkl derivative") {
  DunklParams p(0.8);
  TestFunction sq;
  sq.eval = [](double x) { return x * x; };
  sq.deriv1 = [](double x) { return 2.0 * x; };
  sq.parity = Parity::Even;
  for (double x : {0.5, -1.7}) {
    CHECK(dunkl_derivative(sq, x, p) == doctest::Approx(2.0 * x).epsilon(1e-12));
  }
  TestFunction lin;
  lin.eval = [](double x) { return x; };
  lin.deriv1 = [](double) { return 1.0; };
  for (double x : {0.3, 0.0, -2.0}) {
    CHECK(dunkl_derivative(lin, x, p) ==
          doctest::Approx(1.0 + 2.0 * p.k).epsilon(1e-12));
  }
}

TEST_CASE("dunkl derivative and laplacian on the kernel eigenfunctions") {
  const double k = 0.7, lambda = 2.0;
  DunklParams p(k);
  TestFunction re, im;
  re.eval = [k, lambda](double x) { return specfun::normalized_j(k - 0.5, lambda * x); };
  re.parity = Parity::Even;
  im.eval = [k, lambda](double x) {
    return lambda * x / (2.0 * k + 1.0) * specfun::normalized_j(k + 0.5, lambda * x);
  };
  im.parity = Parity::Odd;
  for (double x : {0.5, 1.1}) {
    // T_k acts like multiplication by i lambda on re + i im
    CHECK(dunkl_derivative(re, x, p) ==
          doctest::Approx(-lambda * im.eval(x)).epsilon(1e-7));
    CHECK(dunkl_derivative(im, x, p) ==
          doctest::Approx(lambda * re.eval(x)).epsilon(1e-7));
    CHECK(dunkl_laplacian_1d(re, x, p) ==
          doctest::Approx(-lambda * lambda * re.eval(x)).epsilon(1e-5));
  }
  // Delta_k of the real sector at (1.5, 0.8, 0.3)
  const double k2 = 0.3, l2 = 1.5;
  DunklParams p2(k2);
  TestFunction re2;
  re2.eval = [k2, l2](double x) { return specfun::normalized_j(k2 - 0.5, l2 * x); };
  re2.parity = Parity::Even;
  CHECK(dunkl_laplacian_1d(re2, 0.8, p2) ==
        doctest::Approx(-l2 * l2 * re2.eval(0.8)).epsilon(1e-5));
}

TEST_CASE("dunkl laplacian closed forms") {
  DunklParams p(0.9);
  TestFunction sq;
  sq.eval = [](double x) { return x * x; };
  sq.deriv1 = [](double x) { return 2.0 * x; };
  sq.deriv2 = [](double) { return 2.0; };
  sq.parity = Parity::Even;
  CHECK(dunkl_laplacian_1d(sq, 1.3, p) ==
        doctest::Approx(2.0 + 4.0 * p.k).epsilon(1e-12));
  DunklParams p0(0.0);
  auto g = make_gaussian(0.0);
  for (double x : {0.4, 1.6}) {
    CHECK(dunkl_laplacian_1d(g, x, p0) == doctest::Approx(g.d2(x)).epsilon(1e-12));
  }
  // Gaussian: Delta_k g = (x^2 - 1 - 2k) g
  for (double k : {0.0, 0.5, 1.2}) {
    DunklParams pk(k);
    auto gg = make_gaussian(k);
    for (double x : {0.0, 0.7, 2.1}) {
      CHECK(dunkl_laplacian_1d(gg, x, pk) ==
            doctest::Approx((x * x - 1.0 - 2.0 * k) * gg(x)).epsilon(1e-11));
    }
  }
}

TEST_CASE("transform: Gaussian fixed point by quadrature") {
  for (double k : {0.0, 0.6, 1.5}) {
    DunklParams p(k);
    auto g = make_gaussian(k);
    for (double xi : {0.0, 0.5, 1.3, 2.9}) {
      const auto got = dunkl_transform(g, xi, p, {}, /*force_quadrature=*/true);
      CHECK(got.real() == doctest::Approx(std::exp(-0.5 * xi * xi)).epsilon(1e-10));
      CHECK(std::abs(got.imag()) < 1e-12);
    }
  }
}

TEST_CASE("transform: heat kernel pairs with exp(-t xi^2) up to the c_k convention") {
  // the mass-1 heat kernel transforms to exp(-t xi^2)/c_k; the c_k-free
  // pairing is the one the semigroup identities use
  const double t = 0.35, k = 0.6;
  DunklParams p(k);
  TestFunction G;
  G.eval = [t, &p](double x) { return heat_kernel(t, x, p); };
  G.parity = Parity::Even;
  G.decay_rate = 0.25 / t;
  for (double xi : {0.0, 0.8, 2.2}) {
    const auto got = dunkl_transform(G, xi, p, {}, true);
    CHECK(p.c_k * got.real() ==
          doctest::Approx(std::exp(-t * xi * xi)).epsilon(1e-10));
  }
}

TEST_CASE("transform: linearity on sampled frequencies") {
  const double k = 0.4;
  DunklParams p(k);
  auto f = make_gaussian(k);
  auto g = make_poly_gaussian(k);
  TestFunction combo;
  combo.eval = [&](double x) { return 2.0 * f(x) - 3.0 * g(x); };
  combo.parity = Parity::Even;
  combo.decay_rate = 0.5;
  for (double xi : {0.3, 1.1}) {
    const auto lhs = dunkl_transform(combo, xi, p, {}, true);
    const auto rhs = 2.0 * dunkl_transform(f, xi, p, {}, true) -
                     3.0 * dunkl_transform(g, xi, p, {}, true);
    CHECK(lhs.real() == doctest::Approx(rhs.real()).epsilon(1e-9));
  }
}

TEST_CASE("transform: poly-gaussian and odd-gaussian closed forms") {
  for (double k : {0.0, 0.7}) {
    DunklParams p(k);
    auto pg = make_poly_gaussian(k);
    auto og = make_odd_gaussian(k);
    for (double xi : {0.4, 1.7}) {
      const auto a = dunkl_transform(pg, xi, p, {}, true);
      CHECK(a.real() == doctest::Approx(pg.transform(xi).real()).epsilon(1e-9));
      const auto b = dunkl_transform(og, xi, p, {}, true);
      CHECK(b.imag() == doctest::Approx(og.transform(xi).imag()).epsilon(1e-9));
      CHECK(std::abs(b.real()) < 1e-11);
    }
  }
}

TEST_CASE("round trip: sup over grid below 1e-8 for the committed set") {
  for (double k : {0.0, 0.3, 0.5, 1.5}) {
    DunklParams p(k);
    for (auto f : {make_gaussian(k), make_poly_gaussian(k), make_odd_gaussian(k)}) {
      Transform1D F(f, p, {}, /*force_quadrature=*/true);
      SpectralFn H;
      H.re_even = [&F](double xi) { return F.even_part(xi); };
      H.im_odd = [&F](double xi) { return F.odd_part(xi); };
      H.decay_rate = 0.45;  // Gaussian-type spectra of the committed set
      double sup = 0.0;
      for (double x : {-2.1, -1.0, -0.4, 0.0, 0.6, 1.3, 2.4}) {
        const auto back = inverse_spectral(H, x, p);
        sup = std::max(sup, std::abs(back.real() - f(x)));
      }
      CAPTURE(k);
      CAPTURE(f.name);
      CHECK(sup < 1e-8);
    }
  }
}

TEST_CASE("inverse transform: Gaussian spectral data recovers c_k heat kernel") {
  // F^{-1}(exp(-s xi^2))(x) = (2s)^{-(k+1/2)} exp(-x^2/4s) = c_k Gamma_k(s,x)
  const double s = 0.8, k = 0.35;
  DunklParams p(k);
  TestFunction F;
  F.eval = [s](double xi) { return std::exp(-s * xi * xi); };
  F.parity = Parity::Even;
  F.decay_rate = s;
  for (double x : {0.0, 0.9, 2.2}) {
    const auto got = inverse_dunkl_transform(F, x, p);
    CHECK(got.real() ==
          doctest::Approx(p.c_k * heat_kernel(s, x, p)).epsilon(1e-10));
  }
}

TEST_CASE("translate: identity at x=0 and constants preserved") {
  const double k = 0.8;
  DunklParams p(k);
  auto f = make_gaussian(k);
  for (double y : {-1.4, 0.3, 2.0}) {
    CHECK(translate(f, 0.0, y, p) == doctest::Approx(f(y)).epsilon(1e-13));
  }
  auto one = make_constant(1.0);
  CHECK(translate(one, 0.9, -1.4, p) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(translate(one, 0.2, 0.7, DunklParams(0.05)) ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK_THROWS_AS(DunklParams(-0.2), std::domain_error);
}

TEST_CASE("translate: k = 0 is the classical shift") {
  DunklParams p(0.0);
  auto f = make_gaussian(0.0);
  CHECK(translate(f, 0.7, -0.2, p) == doctest::Approx(f(0.5)).epsilon(1e-14));
}

TEST_CASE("translate: Gaussian closed form via the modified Bessel kernel") {
  for (double k : {0.25, 0.8, 1.6}) {
    DunklParams p(k);
    auto g = make_gaussian(k);
    for (double x : {0.4, 1.2}) {
      for (double y : {-1.5, -0.3, 0.6, 2.0}) {
        CHECK(translate(g, x, y, p) ==
              doctest::Approx(gaussian_translate_closed(k, x, y)).epsilon(1e-11));
      }
    }
  }
}

TEST_CASE("translate: defining transform identity") {
  // F_k(tau^x f)(xi) = E_k(i x xi) F_k f(xi)
  const double k = 0.6, x = 0.5, xi = 1.2;
  DunklParams p(k);
  auto f = make_gaussian(k);
  TestFunction shifted;
  shifted.eval = [&](double y) { return translate(f, x, y, p); };
  shifted.decay_rate = 0.4;  // translate of the unit Gaussian keeps its tail
  const auto lhs = dunkl_transform(shifted, xi, p, {}, true);
  const auto rhs = dunkl_kernel(x, xi, p) * f.transform(xi);
  CHECK(lhs.real() == doctest::Approx(rhs.real()).epsilon(1e-8));
  CHECK(lhs.imag() == doctest::Approx(rhs.imag()).epsilon(1e-8));
}

TEST_CASE("second difference bound for the Gaussian") {
  // |2u(x) - tau^x u(y) - tau^x u(-y)| <= (2k+1) y^2 for u = exp(-x^2/2)
  for (double k : {0.3, 1.0}) {
    DunklParams p(k);
    auto u = make_gaussian(k);
    for (double x : {0.0, 0.8, 1.9}) {
      for (double y : {0.1, 0.5, 1.3, 3.0}) {
        const double d2 = 2.0 * u(x) - translate(u, x, y, p) - translate(u, x, -y, p);
        CHECK(std::abs(d2) <= (2.0 * k + 1.0) * y * y * (1.0 + 1e-9) + 1e-12);
      }
    }
  }
}

TEST_CASE("spherical mean: endpoints and Pizzetti two-term expansion") {
  const double k = 0.5;
  DunklParams p(k);
  auto f = make_gaussian(k);
  CHECK(spherical_mean_1d(f, 0.9, 0.0, p) == doctest::Approx(f(0.9)));
  auto one = make_constant(1.0);
  CHECK(spherical_mean_1d(one, 0.4, 0.8, p) == doctest::Approx(1.0).epsilon(1e-12));
  // M_r f(0) = f(0) + r^2 Delta_k f(0)/(4(k+1/2)) + O(r^4); the Gaussian's
  // fourth-order coefficient is exactly 1/8
  const double lap0 = -(1.0 + 2.0 * k);  // Delta_k of the Gaussian at 0
  for (double r : {0.2, 0.1, 0.05}) {
    const double lhs = spherical_mean_1d(f, 0.0, r, p);
    const double two_term = f(0.0) + r * r * lap0 / (4.0 * (k + 0.5));
    CHECK(std::abs(lhs - two_term) < 0.13 * r * r * r * r);
    CHECK(std::abs(lhs - two_term) > 0.1 * r * r * r * r);
  }
}

TEST_CASE("pizzetti truncation slopes") {
  // log-log slope of the n-term truncation error is 2(n+1) within 0.2
  const double k = 0.3, x = 0.7;
  DunklParams p(k);
  auto f = make_gaussian(k);
  const double fx = f(x);
  const double lap1 = (x * x - 1.0 - 2.0 * k) * fx;
  const double lap2 =
      (std::pow(x, 4) - (6.0 + 4.0 * k) * x * x + (2.0 * k + 1.0) * (2.0 * k + 3.0)) * fx;
  // cross-check the closed forms against the operator itself
  TestFunction lap1_fn;
  lap1_fn.eval = [k](double t) { return (t * t - 1.0 - 2.0 * k) * std::exp(-0.5 * t * t); };
  lap1_fn.parity = Parity::Even;
  CHECK(dunkl_laplacian_1d(f, x, p) == doctest::Approx(lap1).epsilon(1e-10));
  // finite-difference fallback limits this sanity check to ~1e-5 relative
  CHECK(dunkl_laplacian_1d(lap1_fn, x, p) == doctest::Approx(lap2).epsilon(1e-4));

  const double nu1 = k + 0.5;
  for (int n : {1, 2}) {
    std::vector<double> lr, le;
    for (double r : {0.55, 0.45, 0.35, 0.28, 0.22}) {
      double s = fx;
      s += 0.25 * r * r * lap1 / nu1;
      if (n >= 2) s += std::pow(0.5 * r, 4) * lap2 / (2.0 * nu1 * (nu1 + 1.0));
      const double err = std::abs(spherical_mean_1d(f, x, r, p) - s);
      lr.push_back(std::log(r));
      le.push_back(std::log(err));
    }
    // least-squares slope
    double mr = 0, me = 0;
    for (size_t i = 0; i < lr.size(); ++i) {
      mr += lr[i];
      me += le[i];
    }
    mr /= lr.size();
    me /= le.size();
    double num = 0, den = 0;
    for (size_t i = 0; i < lr.size(); ++i) {
      num += (lr[i] - mr) * (le[i] - me);
      den += (lr[i] - mr) * (lr[i] - mr);
    }
    const double slope = num / den;
    CAPTURE(n);
    CHECK(slope > 2.0 * (n + 1) - 0.2);
    CHECK(slope < 2.0 * (n + 1) + 0.2);
  }
}

TEST_CASE("heat kernel: mass, transform pair, classical limit") {
  const double t = 0.7, k = 0.4;
  DunklParams p(k);
  auto mass = integrate_weighted_line(
      [&](double x) { return heat_kernel(t, x, p); }, p, 0.25 / t,
      std::numeric_limits<double>::infinity());
  CHECK(mass.value == doctest::Approx(1.0).epsilon(1e-11));
  CHECK_THROWS_AS(heat_kernel(0.0, 1.0, p), std::domain_error);
  DunklParams p0(0.0);
  for (double x : {0.0, 1.1}) {
    CHECK(heat_kernel(0.5, x, p0) ==
          doctest::Approx(std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI)).epsilon(1e-14));
  }
}

TEST_CASE("heat semigroup: Gaussian closed form and the t -> 0 limit") {
  const double k = 0.45;
  DunklParams p(k);
  auto g = make_gaussian(k);
  for (double t : {0.2, 0.9}) {
    for (double x : {0.0, 0.8}) {
      const double closed = std::pow(1.0 + 2.0 * t, -(k + 0.5)) *
                            std::exp(-0.5 * x * x / (1.0 + 2.0 * t));
      CHECK(heat_semigroup(g, t, x, p) == doctest::Approx(closed).epsilon(1e-10));
    }
  }
  CHECK(heat_semigroup(g, 1e-6, 0.6, p) == doctest::Approx(g(0.6)).epsilon(1e-6));
}

TEST_CASE("heat semigroup: spectral and translation forms agree") {
  const double t = 0.5, x = 0.8, k = 0.6;
  DunklParams p(k);
  auto g = make_gaussian(k);
  const double a = heat_semigroup(g, t, x, p, {}, SemigroupMode::Spectral);
  const double b = heat_semigroup(g, t, x, p, {}, SemigroupMode::Translation);
  CHECK(a == doctest::Approx(b).epsilon(1e-7));
}

TEST_CASE("convolution: Gaussian pair, heat identity, commutativity") {
  const double k = 0.5;
  DunklParams p(k);
  auto f = make_gaussian(k);
  auto g = make_gaussian(k);
  // F(f*g) = c_k e^{-xi^2}: f*g(x) = c_k 2^{-(k+1/2)} e^{-x^2/4} = Gamma(k+1/2) e^{-x^2/4}
  for (double x : {0.0, 1.0, 2.3}) {
    const double closed = std::tgamma(k + 0.5) * std::exp(-0.25 * x * x);
    CHECK(convolve(f, g, x, p) == doctest::Approx(closed).epsilon(1e-10));
  }
  // f * Gamma_t = heat semigroup
  const double t = 0.4;
  TestFunction G;
  G.eval = [t, &p](double x) { return heat_kernel(t, x, p); };
  G.parity = Parity::Even;
  G.decay_rate = 0.25 / t;
  G.transform = [t, &p](double xi) {
    return std::complex<double>(std::exp(-t * xi * xi) / p.c_k, 0.0);
  };
  G.transform_decay_rate = t;
  for (double x : {0.3, 1.4}) {
    CHECK(convolve(f, G, x, p) ==
          doctest::Approx(heat_semigroup(f, t, x, p)).epsilon(1e-8));
  }
  // commutativity on a non-symmetric pair
  TestFunction mix;
  mix.eval = [](double x) { return (1.0 + 0.5 * x) * std::exp(-0.7 * x * x); };
  mix.decay_rate = 0.7;
  for (double x : {0.5, -1.1}) {
    CHECK(convolve(f, mix, x, p) ==
          doctest::Approx(convolve(mix, f, x, p)).epsilon(1e-8));
  }
}

TEST_CASE("skew symmetry of T_k against the weight") {
  for (double k : {0.3, 1.1}) {
    DunklParams p(k);
    auto f = make_gaussian(k);
    TestFunction g;
    g.eval = [](double x) { return (x + 0.7) * std::exp(-x * x); };
    g.decay_rate = 1.0;
    auto Tf = [&](double x) { return dunkl_derivative(f, x, p); };
    auto Tg = [&](double x) { return dunkl_derivative(g, x, p); };
    const double lhs =
        integrate_weighted_line([&](double x) { return Tf(x) * g(x); }, p, 1.4,
                                std::numeric_limits<double>::infinity())
            .value;
    const double rhs =
        integrate_weighted_line([&](double x) { return f(x) * Tg(x); }, p, 1.4,
                                std::numeric_limits<double>::infinity())
            .value;
    CHECK(lhs == doctest::Approx(-rhs).epsilon(1e-8));
  }
}

}  // TEST_SUITE
