#include "fraclap/specfun.hpp"

#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>

namespace fraclap::specfun {

namespace {

constexpr double kSeriesCutoff = 12.0;  // series vs backend switch for normalized J

double checked_order(double nu) {
  if (!(nu > -1.0))
    throw std::domain_error("bessel: order must be > -1");
  return nu;
}

}  // namespace

double normalized_j_series(double nu, double x) {
  checked_order(nu);
  const double q = -0.25 * x * x;
  double term = 1.0, sum = 1.0;
  for (int m = 1; m <= 300; ++m) {
    term *= q / (m * (nu + m));
    sum += term;
    if (std::abs(term) < 1e-18 * std::abs(sum) + 1e-300) break;
  }
  return sum;
}

double normalized_j(double nu, double x) {
  checked_order(nu);
  x = std::abs(x);
  if (x < kSeriesCutoff) return normalized_j_series(nu, x);
  const double j = boost::math::cyl_bessel_j(nu, x);
  if (j == 0.0) return 0.0;
  // log-space prefactor: Gamma(nu+1)(2/x)^nu can overflow on its own for
  // large nu even though the product is O(1)
  const double lg = std::lgamma(nu + 1.0) + nu * std::log(2.0 / x);
  return std::copysign(std::exp(lg + std::log(std::abs(j))), j);
}

double bessel(BesselKind kind, double nu, double x) {
  checked_order(nu);
  switch (kind) {
    case BesselKind::NormalizedJ:
      return normalized_j(nu, x);
    case BesselKind::J:
      return boost::math::cyl_bessel_j(nu, std::abs(x));
    case BesselKind::I:
      return boost::math::cyl_bessel_i(nu, std::abs(x));
    case BesselKind::K:
      if (!(x > 0.0))
        throw std::domain_error("bessel: K_nu diverges at x <= 0");
      try {
        return boost::math::cyl_bessel_k(nu, x);
      } catch (const std::overflow_error&) {
        return std::numeric_limits<double>::infinity();
      } catch (const std::underflow_error&) {
        return 0.0;
      }
  }
  throw std::logic_error("bessel: unknown kind");
}

double bessel_j_zero(double nu, int m) {
  if (m < 1) throw std::domain_error("bessel_j_zero: m must be >= 1");
  checked_order(nu);
  return boost::math::cyl_bessel_j_zero(nu, m);
}

double abs_gamma_neg_half(double alpha) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::domain_error("abs_gamma_neg_half: alpha must lie in (0,2)");
  return M_PI / (std::sin(0.5 * M_PI * alpha) * std::tgamma(1.0 + 0.5 * alpha));
}

double classical_gamma_d(int d, double alpha) {
  return std::pow(M_PI, 0.5 * d) * abs_gamma_neg_half(alpha) /
         (std::pow(2.0, alpha) * std::tgamma(0.5 * (d + alpha)));
}

ConstantSet constants(double k, int d, double alpha) {
  if (!(k >= 0.0)) throw std::domain_error("constants: k must be >= 0");
  if (d < 1) throw std::domain_error("constants: d must be a positive integer");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::domain_error("constants: alpha must lie in (0,2)");

  ConstantSet c;
  c.k = k;
  c.d = d;
  c.alpha = alpha;

  const double g = k;                // homogeneity gamma_k
  const double gd2 = g + 0.5 * d;    // gamma_k + d/2
  const double agn = abs_gamma_neg_half(alpha);

  // Weighted sphere surface for the single-root weight |x_1|^{2k}; the
  // Gaussian integral in polar form is then sigma * 2^{gd2-1} Gamma(gd2).
  c.sigma_k_d = 2.0 * std::exp(0.5 * (d - 1) * std::log(M_PI) +
                               std::lgamma(k + 0.5) - std::lgamma(k + 0.5 * d));
  c.c_k = c.sigma_k_d * std::exp((gd2 - 1.0) * std::log(2.0) + std::lgamma(gd2));

  c.gamma_kd_alpha =
      c.c_k * agn / std::exp((alpha + gd2) * std::log(2.0) + std::lgamma(gd2 + 0.5 * alpha));
  c.pi_kd_alpha = c.gamma_kd_alpha / (2.0 * c.sigma_k_d);
  c.varsigma_alpha = std::exp((alpha + 1.0) * std::log(2.0) + std::lgamma(gd2 + 0.5 * alpha) -
                              std::lgamma(gd2)) /
                     (std::sqrt(M_PI) * agn);
  c.d_k_alpha = std::exp(std::lgamma(gd2 - 0.5 * alpha) + (gd2 - alpha) * std::log(2.0) -
                         std::lgamma(0.5 * alpha)) /
                c.c_k;
  c.b_k_alpha = std::exp(gd2 * std::log(2.0) + std::lgamma(gd2 + 0.5 * alpha) -
                         std::lgamma(0.5 * alpha)) /
                c.c_k;
  return c;
}

}  // namespace fraclap::specfun
