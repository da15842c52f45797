#include <doctest.h>

#include <cmath>

#include "fraclap/radial.hpp"

using namespace fraclap;
using namespace fraclap::radial;

TEST_SUITE("radial") {

TEST_CASE("fourier_bessel: Gaussian fixed point for several orders") {
  for (double nu : {-0.5, 0.0, 0.5, 1.5, 2.0}) {
    auto g = radial_gaussian(nu);
    RadialProfile raw = g;
    raw.transform = nullptr;  // force quadrature
    for (double r : {0.0, 0.7, 1.9}) {
      CHECK(fourier_bessel(raw, nu, r) ==
            doctest::Approx(std::exp(-0.5 * r * r)).epsilon(1e-10));
    }
  }
}

TEST_CASE("fourier_bessel: r = 0 gives the normalized mass") {
  const double nu = 0.8;
  auto g = radial_gaussian(nu);
  RadialProfile raw = g;
  raw.transform = nullptr;
  // [2^{-nu}/Gamma(nu+1)] Int_0^inf e^{-s^2/2} s^{2nu+1} ds = 1
  CHECK(fourier_bessel(raw, nu, 0.0) == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("fourier_bessel: matches the even-sector transform at d = 1") {
  // for d=1 the even sector of the line transform is the nu = k-1/2 integral
  const double k = 0.6;
  dunkl::DunklParams p(k);
  auto g1 = make_gaussian(k);
  auto gr = radial_gaussian(k - 0.5);
  RadialProfile raw = gr;
  raw.transform = nullptr;
  for (double xi : {0.4, 1.3}) {
    const auto line = dunkl::dunkl_transform(g1, xi, p, {}, true);
    CHECK(fourier_bessel(raw, k - 0.5, xi) ==
          doctest::Approx(line.real()).epsilon(1e-10));
  }
}

TEST_CASE("bessel_translate: normalization and endpoints") {
  RadialProfile one;
  one.eval = [](double) { return 1.0; };
  CHECK(bessel_translate(one, 0.9, 1.7, 1.2) == doctest::Approx(1.0).epsilon(1e-12));
  auto g = radial_gaussian(0.9);
  CHECK(bessel_translate(g, 0.0, 1.1, 0.9) == doctest::Approx(g.eval(1.1)));
  CHECK(bessel_translate(g, 0.7, 0.0, 0.9) == doctest::Approx(g.eval(0.7)));
  CHECK_THROWS_AS(bessel_translate(g, 0.5, 0.5, -0.6), std::domain_error);
}

TEST_CASE("bessel_translate: product formula on the Gaussian") {
  // F(T^r f)(xi) = J~_nu(r xi) F f(xi)
  const double nu = 1.5, r = 0.6, xi = 1.1;
  auto g = radial_gaussian(nu);
  RadialProfile shifted;
  shifted.eval = [&](double rho) { return bessel_translate(g, r, rho, nu); };
  shifted.decay_rate = 0.4;
  const double lhs = fourier_bessel(shifted, nu, xi);
  const double rhs = specfun::normalized_j(nu, r * xi) * std::exp(-0.5 * xi * xi);
  CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
}

TEST_CASE("radial fractional operator: closed Gamma form at the origin") {
  // 2^{alpha/2} Gamma(gamma+(d+alpha)/2) / Gamma(gamma+d/2) for the Gaussian
  struct Case {
    double k;
    int d;
    double alpha;
  };
  for (auto c : {Case{0.0, 2, 1.0}, Case{0.5, 2, 0.7}, Case{0.5, 3, 1.4}}) {
    const double nu = c.k + 0.5 * c.d - 1.0;
    auto g = radial_gaussian(nu);
    const double got = radial_frac_laplacian(g, 0.0, c.alpha, c.k, c.d);
    const double expect = std::pow(2.0, 0.5 * c.alpha) *
                          std::tgamma(c.k + 0.5 * (c.d + c.alpha)) /
                          std::tgamma(c.k + 0.5 * c.d);
    CHECK(got == doctest::Approx(expect).epsilon(1e-9));
  }
  // the (k,d,alpha) = (0,2,1) value is sqrt(pi/2)
  auto g = radial_gaussian(0.0);
  CHECK(radial_frac_laplacian(g, 0.0, 1.0, 0.0, 2) ==
        doctest::Approx(std::sqrt(0.5 * M_PI)).epsilon(1e-9));
}

TEST_CASE("radial fractional operator: classical d=2 oracle on a radius grid") {
  // k = 0, d = 2: (-Delta)^{1/2} of the Gaussian via the plain J_0 Fourier
  // inversion, independent of the normalized-Bessel machinery
  auto g = radial_gaussian(0.0);
  for (double x : {0.0, 0.6, 1.4, 2.2}) {
    auto f = [x](double rho) {
      return std::pow(rho, 2.0) * std::exp(-0.5 * rho * rho) *
             specfun::bessel(specfun::BesselKind::J, 0.0, rho * x);
    };
    const double classical = quad::integrate_adaptive(f, 0.0, 14.0, 1e-13, 1e-13).value;
    const double got = radial_frac_laplacian(g, x, 1.0, 0.0, 2);
    CHECK(got == doctest::Approx(classical).epsilon(1e-6));
  }
}

TEST_CASE("radial fractional operator: spectral vs translation modes") {
  for (double k : {0.0, 0.5}) {
    for (int d : {2, 3}) {
      for (double alpha : {0.5, 1.0, 1.5}) {
        const double nu = k + 0.5 * d - 1.0;
        auto g = radial_gaussian(nu);
        for (double x : {0.0, 0.8, 1.6}) {
          const double a = radial_frac_laplacian(g, x, alpha, k, d, {},
                                                 RadialMode::Spectral);
          const double b = radial_frac_laplacian(g, x, alpha, k, d, {},
                                                 RadialMode::Translation);
          CAPTURE(k);
          CAPTURE(d);
          CAPTURE(alpha);
          CAPTURE(x);
          CHECK(std::abs(a - b) <= 1e-6 * std::max(1.0, std::abs(a)));
        }
      }
    }
  }
}

TEST_CASE("radial prefactor: nu-order translation constant vs the printed one") {
  // the double-integral prefactor equals varsigma * Gamma(nu+1)/Gamma(nu+1/2)
  // once the theta-weight is normalized; both sides in closed Gamma form
  for (double k : {0.0, 0.5}) {
    for (int d : {2, 3}) {
      const double alpha = 1.2;
      const double nu = k + 0.5 * d - 1.0;
      const auto c = specfun::constants(k, d, alpha);
      const double Cnu = std::pow(2.0, alpha + 1.0) *
                         std::tgamma(nu + 1.0 + 0.5 * alpha) /
                         (std::tgamma(nu + 1.0) * specfun::abs_gamma_neg_half(alpha));
      const double cnu = std::tgamma(nu + 1.0) /
                         (std::sqrt(M_PI) * std::tgamma(nu + 0.5));
      CHECK(Cnu * cnu ==
            doctest::Approx(c.varsigma_alpha * std::tgamma(nu + 1.0) /
                            std::tgamma(nu + 0.5))
                .epsilon(1e-13));
    }
  }
}

TEST_CASE("round trip through the transform for both profile families") {
  for (double nu : {0.0, 0.9}) {
    auto g = radial_gaussian(nu);
    auto l = radial_lorentz(nu, nu + 2.0);
    for (const auto& f : {g, l}) {
      RadialProfile spec;
      spec.eval = f.transform;
      spec.decay_rate = f.transform_decay_rate;
      spec.support_radius = f.transform_support;
      for (double r : {0.3, 1.1, 2.4}) {
        CAPTURE(f.name);
        CAPTURE(nu);
        CAPTURE(r);
        CHECK(fourier_bessel(spec, nu, r) ==
              doctest::Approx(f.eval(r)).epsilon(1e-7));
      }
    }
  }
}

TEST_CASE("homogeneity: rescaling the profile rescales the symbol") {
  // u_s(r) = u(s r) => A[u_s](x) = s^alpha A[u](s x)
  const double k = 0.5;
  const int d = 2;
  const double alpha = 0.9, s = 2.0;
  const double nu = k + 0.5 * d - 1.0;
  auto g = radial_gaussian(nu);
  RadialProfile gs;
  gs.eval = [s](double r) { return std::exp(-0.5 * s * s * r * r); };
  gs.decay_rate = 0.5 * s * s;
  const double amp = std::pow(2.0 * 0.5 * s * s, -(nu + 1.0));
  gs.transform = [s, amp](double xi) {
    return amp * std::exp(-xi * xi / (4.0 * 0.5 * s * s * 2.0) * 2.0);
  };
  gs.transform = nullptr;  // quadrature is cheap here and avoids hand errors
  for (double x : {0.4, 1.0}) {
    const double lhs = radial_frac_laplacian(gs, x, alpha, k, d);
    const double rhs =
        std::pow(s, alpha) * radial_frac_laplacian(g, s * x, alpha, k, d);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
  }
}

}  // TEST_SUITE
