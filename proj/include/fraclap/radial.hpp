#pragma once
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "fraclap/dunkl1d.hpp"
#include "fraclap/quadrature.hpp"

// Radial calculus for d >= 2: the Fourier-Bessel (Hankel-type) transform of
// order nu = gamma_k + d/2 - 1, the Bessel-operator translation pinned by its
// product formula, and the radial fractional operator in spectral and
// translation form.

namespace fraclap::radial {

struct RadialProfile {
  std::function<double(double)> eval;  // on [0, inf), finite at 0
  double decay_rate = 0.0;             // Gaussian hint
  double support_radius = std::numeric_limits<double>::infinity();
  std::function<double(double)> transform;  // known transform for its nu
  double transform_decay_rate = 0.0;
  double transform_support = std::numeric_limits<double>::infinity();
  std::vector<double> profile_taylor;  // f(r) = sum a_p r^{2p} near 0
  std::string name = "profile";
};

// exp(-r^2/2); fixed point of the transform for every order
RadialProfile radial_gaussian(double nu);
// (1+r^2)^{-s} with the K-Bessel transform (s > nu+1)
RadialProfile radial_lorentz(double nu, double s);

// [2^{-nu}/Gamma(nu+1)] Int_0^inf f0(s) J~_nu(r s) s^{2nu+1} ds
double fourier_bessel(const RadialProfile& f0, double nu, double r,
                      const dunkl::QuadOpts& opts = {});

// c(nu) Int_0^pi f0(sqrt(r^2+rho^2-2 r rho cos th)) sin^{2nu} th dth with
// c(nu) = Gamma(nu+1)/(sqrt(pi) Gamma(nu+1/2)); satisfies the product
// formula F(T^r f)(xi) = J~_nu(r xi) F f(xi) and T^r 1 = 1.
double bessel_translate(const RadialProfile& f0, double r, double rho, double nu,
                        const dunkl::QuadOpts& opts = {});

enum class RadialMode { Spectral, Translation };

// (-Delta_k)^{alpha/2} of the radial function with profile u0, evaluated at
// |x| = x_norm. Spectral mode applies the |xi|^alpha multiplier between two
// transforms; translation mode integrates the translated profile against
// rho^{-1-alpha} with the Gamma-form prefactor.
double radial_frac_laplacian(const RadialProfile& u0, double x_norm, double alpha,
                             double k, int d, const dunkl::QuadOpts& opts = {},
                             RadialMode mode = RadialMode::Spectral);

}  // namespace fraclap::radial
