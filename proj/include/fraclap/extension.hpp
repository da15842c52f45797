#pragma once
#include <vector>

#include "fraclap/dunkl1d.hpp"
#include "fraclap/specfun.hpp"

// Degenerate-elliptic extension in one extra variable: Poisson-type kernel,
// spectral solution operator, and the weighted Neumann limit that realizes
// the fractional operator at the boundary.

namespace fraclap::ext {

// p_{alpha,y}(x) = b_k(alpha) y^alpha (y^2+|x|^2)^{-(gamma_k+(d+alpha)/2)};
// unit mass against w_k.
double poisson_kernel(double alpha, double y, double x, const specfun::ConstantSet& c);

// transform-domain solution multiplier m(z) = z^{alpha/2} K_{alpha/2}(z) /
// (2^{alpha/2-1} Gamma(alpha/2)); m(0) = 1, m -> 0 at infinity.
double extension_multiplier(double alpha, double z);
// dm/dz, via d/dz [z^nu K_nu(z)] = -z^nu K_{nu-1}(z)
double extension_multiplier_dz(double alpha, double z);

enum class SolveMode { Spectral, Convolution };

// U(x,y) solving Delta_k U + U_yy + ((1-alpha)/y) U_y = 0 with U(.,0) = u.
// Spectral mode applies m(y|xi|) in the transform domain; convolution mode
// integrates u against the translated kernel (validation of the kernel
// normalization).
double solve_extension(const TestFunction& u, double x, double y, double alpha,
                       const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {},
                       SolveMode mode = SolveMode::Spectral);

// dU/dy at (x,y), computed exactly in the transform domain.
double solve_extension_dy(const TestFunction& u, double x, double y, double alpha,
                          const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {});

std::vector<double> default_y_sequence(double y0 = 0.4, double ratio = 0.5, int n = 8);

enum class NeumannBackend {
  SpectralExact,   // dU/dy from the derivative multiplier
  SpectralFd,      // h = y/8 central difference (validation mode; slightly
                   // biased for alpha far from 1)
  ConvolutionFd,   // translated-kernel solution + central difference, for
                   // bounded inputs with no usable spectrum
};

// -2^{alpha-1} Gamma(alpha/2)/Gamma(1-alpha/2) lim_{y->0} y^{1-alpha} dU/dy,
// extracted from the geometric y-sequence by Richardson steps with the
// exponent ladder {2-alpha, 2, 4-alpha}. err_out, when given, receives the
// extrapolation residual. Throws std::runtime_error when the residuals grow
// beyond the noise floor.
double neumann_limit(const TestFunction& u, double x, double alpha,
                     const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {},
                     std::vector<double> y_seq = {},
                     NeumannBackend backend = NeumannBackend::SpectralExact,
                     double* err_out = nullptr, long* neval_out = nullptr);

}  // namespace fraclap::ext
