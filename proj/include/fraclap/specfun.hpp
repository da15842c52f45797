#pragma once
#include <stdexcept>

// Special functions and the ledger of normalization constants shared by all
// operator routes. Everything here is pure and reentrant.

namespace fraclap::specfun {

enum class BesselKind { J, I, K, NormalizedJ };

// Bessel function of the requested kind.
//   J, I         : cylindrical Bessel / modified Bessel of the first kind
//   K            : modified Bessel of the third kind (Macdonald function)
//   NormalizedJ  : Gamma(nu+1) (2/x)^nu J_nu(x), even in x, value 1 at x=0
// J and I accept negative x through their even extension in the normalized
// form (all callers use x >= 0). Throws std::domain_error for nu <= -1, and
// for K at x <= 0 where it diverges.
double bessel(BesselKind kind, double nu, double x);

// Gamma(nu+1) (2/x)^nu J_nu(x) with the removable singularity at x=0 filled
// by its power series.
double normalized_j(double nu, double x);

// Power-series evaluation of normalized_j; independent small-x oracle.
// Accurate to ~1e-13 relative for |x| <= 12.
double normalized_j_series(double nu, double x);

// m-th positive zero of J_nu (m >= 1).
double bessel_j_zero(double nu, int m);

// |Gamma(-alpha/2)| for alpha in (0,2), via the reflection formula
// pi / (sin(pi alpha/2) Gamma(1+alpha/2)); avoids pole-adjacent cancellation.
double abs_gamma_neg_half(double alpha);

// Normalization constants for multiplicity k >= 0, dimension d >= 1 and
// order alpha in (0,2). gamma_k = k (single-root model; the weight is
// |x|^{2k} on the line and |x_1|^{2k} in higher dimension, so the weighted
// sphere surface and the Gaussian integral have closed Gamma forms).
struct ConstantSet {
  double k = 0.0;
  int d = 1;
  double alpha = 1.0;

  double c_k = 0.0;             // int exp(-|x|^2/2) w_k dx
  double sigma_k_d = 0.0;       // weighted surface of the unit sphere
  double gamma_kd_alpha = 0.0;  // pointwise-route constant
  double pi_kd_alpha = 0.0;     // = gamma_kd_alpha / (2 sigma_k_d)
  double varsigma_alpha = 0.0;  // radial double-integral constant
  double d_k_alpha = 0.0;       // Riesz / fundamental-solution constant
  double b_k_alpha = 0.0;       // Poisson kernel constant

  double gamma_k() const { return k; }
  double bessel_order() const { return k + 0.5 * d - 1.0; }  // nu
};

// Validates arguments once; all routes share the resulting set.
ConstantSet constants(double k, int d, double alpha);

// Classical pointwise constant pi^{d/2} |Gamma(-alpha/2)| / (2^alpha Gamma((d+alpha)/2)).
double classical_gamma_d(int d, double alpha);

}  // namespace fraclap::specfun
