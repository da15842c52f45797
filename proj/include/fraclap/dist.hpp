#pragma once
#include "fraclap/functions.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/radial.hpp"
#include "fraclap/specfun.hpp"

// Distributional layer: regularized power pairings with analytic
// continuation across the pole ladder, residues, the transform identity for
// the power distribution, the K-Bessel kernel family and the fundamental
// solution pairing.

namespace fraclap::dist {

struct PoleError : std::domain_error {
  using std::domain_error::domain_error;
};

// <|x|^{-alpha}, phi> = (1/c_k) Int phi(x) |x|^{-alpha} w_k(x) dx on the
// line (d from the constant set; the d=1 surface uses the even part of phi).
// Below the first pole the integral is direct; above, the Taylor-subtracted
// three-part splitting with n terms (n chosen minimal unless force_n >= 0).
// Throws PoleError at alpha = 2 gamma_k + d + 2p.
double power_pairing(double alpha, const TestFunction& phi,
                     const specfun::ConstantSet& c, const dunkl::QuadOpts& opts = {},
                     int force_n = -1);

// residue of alpha -> <|x|^{-alpha}, phi> at alpha_p = 2 gamma_k + d + 2p,
// extracted from a two-sided geometric approach with Richardson steps.
double residue(int p, const TestFunction& phi, const specfun::ConstantSet& c,
               const dunkl::QuadOpts& opts = {});
// closed form -sigma_k(d) a_p / c_k with a_p the even-profile Taylor
// coefficient (equals -sigma Delta_k^p phi(0) / (c_k 4^p (nu+1)_p p!)).
double residue_closed_form(int p, const TestFunction& phi, const specfun::ConstantSet& c);

struct RieszCheck {
  double lhs = 0.0;  // <|x|^{-alpha}, F_k phi>, normalized pairing
  double rhs = 0.0;  // d_k(alpha) Int |x|^{alpha-2gamma-d} phi w_k dx
};
RieszCheck riesz_transform_check(double alpha, const TestFunction& phi,
                                 const specfun::ConstantSet& c,
                                 const dunkl::QuadOpts& opts = {});

// <|x|^{2p}, F_k phi> ( = (-Delta_k)^p phi(0) )
double riesz_moment_pairing(int p, const TestFunction& phi,
                            const specfun::ConstantSet& c,
                            const dunkl::QuadOpts& opts = {});

// q_{alpha,y}(x) = d_k(alpha) (y^2+|x|^2)^{-(gamma_k+(d-alpha)/2)}
double q_kernel(double alpha, double y, double x, const specfun::ConstantSet& c);

struct PairCheck {
  double computed = 0.0;
  double closed_form = 0.0;
};
// transform of q_{alpha,y} via the oscillatory radial integral vs the
// K-Bessel closed form (d >= 2)
PairCheck q_kernel_transform_check(double alpha, double y, double x_norm,
                                   const specfun::ConstantSet& c,
                                   const dunkl::QuadOpts& opts = {});
// fractional operator applied to q_{alpha,y} via the radial spectral route
// vs its algebraic closed form (d >= 2)
PairCheck q_kernel_fraclap_check(double alpha, double y, double x_norm,
                                 const specfun::ConstantSet& c,
                                 const dunkl::QuadOpts& opts = {});

// f_alpha(x) = d_k(alpha) |x|^{-(2 gamma_k + d - alpha)}; singular at x = 0.
double fundamental_solution(double alpha, double x, const specfun::ConstantSet& c);

// Int f_alpha(x) (-Delta_k)^{alpha/2} phi(x) w_k(x) dx over R^d for a radial
// phi; returns phi(0) when everything is consistent.
double fundamental_pairing(const radial::RadialProfile& phi, double alpha,
                           const specfun::ConstantSet& c,
                           const dunkl::QuadOpts& opts = {});

}  // namespace fraclap::dist
