#include "fraclap/extension.hpp"

#include <cmath>

namespace fraclap::ext {

using dunkl::DunklParams;
using dunkl::QuadOpts;
using dunkl::Transform1D;
using quad::Integral;

double poisson_kernel(double alpha, double y, double x, const specfun::ConstantSet& c) {
  if (!(y > 0.0)) throw std::domain_error("poisson_kernel: y must be > 0");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::domain_error("poisson_kernel: alpha must lie in (0,2)");
  const double s = c.gamma_k() + 0.5 * (c.d + alpha);
  return c.b_k_alpha * std::pow(y, alpha) * std::pow(y * y + x * x, -s);
}

double extension_multiplier(double alpha, double z) {
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::domain_error("extension_multiplier: alpha must lie in (0,2)");
  if (z <= 0.0) return 1.0;
  const double nu = 0.5 * alpha;
  const double kz = specfun::bessel(specfun::BesselKind::K, nu, z);
  if (kz == 0.0) return 0.0;
  return std::pow(z, nu) * kz /
         std::exp((nu - 1.0) * std::log(2.0) + std::lgamma(nu));
}

double extension_multiplier_dz(double alpha, double z) {
  const double nu = 0.5 * alpha;
  if (z <= 0.0) throw std::domain_error("extension_multiplier_dz: z must be > 0");
  const double kz = specfun::bessel(specfun::BesselKind::K, 1.0 - nu, z);  // K_{nu-1}
  if (kz == 0.0) return 0.0;
  return -std::pow(z, nu) * kz /
         std::exp((nu - 1.0) * std::log(2.0) + std::lgamma(nu));
}

namespace {

// P_mu(w) = sum_m (w/4)^m / (m! Gamma(m+1-mu)); all terms positive
double series_p(double mu, double w) {
  double term = 1.0 / std::tgamma(1.0 - mu), sum = term;
  for (int m = 1; m <= 200; ++m) {
    term *= 0.25 * w / (m * (m - mu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}
// Q_mu(w) = sum_m (w/4)^m / (m! Gamma(m+1+mu))
double series_q(double mu, double w) {
  double term = 1.0 / std::tgamma(1.0 + mu), sum = term;
  for (int m = 1; m <= 200; ++m) {
    term *= 0.25 * w / (m * (m + mu));
    sum += term;
    if (term < 1e-17 * sum) break;
  }
  return sum;
}

constexpr double kSeriesSplitZ = 6.0;

// F_k^{-1}( M(y |xi|) F_k u )(x) where M is the solution multiplier m (or
// xi m'(y xi) for the derivative). Near the origin the z^{alpha}-singular
// part of the expansion is carried as an exact quadrature weight:
//   m(z)  = Gamma(1-nu) P_nu(z^2) - Gamma(1-nu) 4^{-nu} z^{2nu} Q_nu(z^2)
//   m'(z) = (Gamma(1-nu)/2) z Q_{1-nu}(z^2)
//           - 2 Gamma(1-nu) 4^{-nu} z^{2nu-1} P_{1-nu}(z^2)
// with nu = alpha/2; beyond z = 6 the closed K-Bessel form takes over.
Integral apply_extension_multiplier(const Transform1D& F, double x,
                                    const DunklParams& p, const QuadOpts& opts,
                                    double y, double alpha, bool derivative) {
  const double nu = 0.5 * alpha;
  const double g1n = std::tgamma(1.0 - nu);
  const double xi_star = kSeriesSplitZ / y;

  std::function<double(double)> smooth, singular, closed;
  if (!derivative) {
    smooth = [=](double xi) { return g1n * series_p(nu, y * y * xi * xi); };
    singular = [=](double xi) {
      return -g1n * std::pow(4.0, -nu) * std::pow(y, alpha) *
             series_q(nu, y * y * xi * xi);
    };
    closed = [=](double xi) { return extension_multiplier(alpha, y * xi); };
  } else {
    smooth = [=](double xi) {
      return 0.5 * g1n * y * xi * xi * series_q(1.0 - nu, y * y * xi * xi);
    };
    singular = [=](double xi) {
      return -2.0 * g1n * std::pow(4.0, -nu) * std::pow(y, alpha - 1.0) *
             series_p(1.0 - nu, y * y * xi * xi);
    };
    closed = [=](double xi) {
      return xi <= 0.0 ? 0.0 : xi * extension_multiplier_dz(alpha, y * xi);
    };
  }

  const double ax = std::abs(x);
  const double decay = F.decay_rate();
  Integral out;

  auto sector = [&](double nu_order, double weight_pow,
                    const std::function<double(double)>& part_of_F,
                    double outer_coeff) {
    auto g_s = [&](double xi) {
      return smooth(xi) * part_of_F(xi) * specfun::normalized_j(nu_order, ax * xi);
    };
    auto g_g = [&](double xi) {
      return singular(xi) * part_of_F(xi) * specfun::normalized_j(nu_order, ax * xi);
    };
    Integral a = dunkl::weighted_halfline(g_s, weight_pow, decay, xi_star, ax, opts);
    Integral b =
        dunkl::weighted_halfline(g_g, weight_pow + alpha, decay, xi_star, ax, opts);
    out.value += outer_coeff * (a.value + b.value);
    out.err += std::abs(outer_coeff) * (a.err + b.err);
    out.neval += a.neval + b.neval;
    // beyond the window the closed form is smooth and the kernel dies off
    const double R =
        decay > 0.0 ? std::sqrt(100.0 / decay) + 4.0 : 120.0 / y + xi_star;
    if (R > xi_star) {
      auto g_c = [&](double xi) {
        return closed(xi) * part_of_F(xi) *
               specfun::normalized_j(nu_order, ax * xi) * std::pow(xi, weight_pow);
      };
      Integral c =
          quad::integrate_adaptive(g_c, xi_star, R, opts.abs_tol, opts.rel_tol);
      out.value += outer_coeff * c.value;
      out.err += std::abs(outer_coeff) * c.err;
      out.neval += c.neval;
    }
  };

  sector(p.k - 0.5, 2.0 * p.k, [&F](double xi) { return F.even_part(xi); },
         2.0 / p.c_k);
  if (F.odd_part(1.0) != 0.0 || F.odd_part(0.5) != 0.0) {
    sector(p.k + 0.5, 2.0 * p.k + 1.0, [&F](double xi) { return F.odd_part(xi); },
           -2.0 * x / ((2.0 * p.k + 1.0) * p.c_k));
  }
  return out;
}

}  // namespace

double solve_extension(const TestFunction& u, double x, double y, double alpha,
                       const DunklParams& p, const QuadOpts& opts, SolveMode mode) {
  if (!(y > 0.0)) throw std::domain_error("solve_extension: y must be > 0");
  if (!(alpha > 0.0 && alpha < 2.0))
    throw std::domain_error("solve_extension: alpha must lie in (0,2)");
  if (mode == SolveMode::Convolution) {
    // U = Int p_{alpha,y}(s) tau^x u(s) w_k(s) ds (no 1/c_k: the placement
    // that keeps U(.,0) = u, tied to the convolution rule)
    auto c = specfun::constants(p.k, 1, alpha);
    auto h = [&](double s) {
      return poisson_kernel(alpha, y, s, c) * dunkl::translate(u, x, s, p, opts);
    };
    // kernel tail is algebraic: let the doubling panels estimate it
    return dunkl::integrate_weighted_line(h, p, 0.0,
                                          std::numeric_limits<double>::infinity(), opts)
        .value;
  }
  Transform1D F(u, p, opts);
  return apply_extension_multiplier(F, x, p, opts, y, alpha, false).value;
}

double solve_extension_dy(const TestFunction& u, double x, double y, double alpha,
                          const DunklParams& p, const QuadOpts& opts) {
  if (!(y > 0.0)) throw std::domain_error("solve_extension_dy: y must be > 0");
  Transform1D F(u, p, opts);
  return apply_extension_multiplier(F, x, p, opts, y, alpha, true).value;
}

std::vector<double> default_y_sequence(double y0, double ratio, int n) {
  std::vector<double> ys(n);
  double y = y0;
  for (int i = 0; i < n; ++i, y *= ratio) ys[i] = y;
  return ys;
}

double neumann_limit(const TestFunction& u, double x, double alpha,
                     const DunklParams& p, const QuadOpts& opts,
                     std::vector<double> y_seq, NeumannBackend backend,
                     double* err_out, long* neval_out) {
  if (y_seq.empty()) y_seq = default_y_sequence();
  if (y_seq.size() < 3)
    throw std::domain_error("neumann_limit: need at least 3 points in y_seq");
  for (size_t i = 0; i < y_seq.size(); ++i) {
    if (!(y_seq[i] >= 1e-6))
      throw std::domain_error("neumann_limit: y_seq must stay >= 1e-6");
    if (i > 0 && !(y_seq[i] < y_seq[i - 1]))
      throw std::domain_error("neumann_limit: y_seq must decrease");
  }
  const double rho = y_seq[1] / y_seq[0];
  for (size_t i = 2; i < y_seq.size(); ++i)
    if (std::abs(y_seq[i] / y_seq[i - 1] - rho) > 1e-9 * (1.0 + rho))
      throw std::domain_error("neumann_limit: y_seq must be geometric");

  Transform1D F(u, p, opts);
  long budget = 0;
  auto U_spectral = [&](double yy) {
    auto v = apply_extension_multiplier(F, x, p, opts, yy, alpha, false);
    budget += v.neval;
    return v.value;
  };
  auto dU_spectral = [&](double yy) {
    auto v = apply_extension_multiplier(F, x, p, opts, yy, alpha, true);
    budget += v.neval;
    return v.value;
  };
  auto U_conv = [&](double yy) {
    budget += 1;
    return solve_extension(u, x, yy, alpha, p, opts, SolveMode::Convolution);
  };

  std::vector<double> D(y_seq.size());
  for (size_t i = 0; i < y_seq.size(); ++i) {
    const double y = y_seq[i];
    double dUdy;
    switch (backend) {
      case NeumannBackend::SpectralExact:
        dUdy = dU_spectral(y);
        break;
      case NeumannBackend::SpectralFd:
        dUdy = (U_spectral(y + y / 8.0) - U_spectral(y - y / 8.0)) / (y / 4.0);
        break;
      case NeumannBackend::ConvolutionFd:
        dUdy = (U_conv(y + y / 8.0) - U_conv(y - y / 8.0)) / (y / 4.0);
        break;
      default:
        throw std::logic_error("neumann_limit: unknown backend");
    }
    D[i] = std::pow(y, 1.0 - alpha) * dUdy;
  }

  // Richardson sweeps with the known correction exponents
  const double ladder[3] = {2.0 - alpha, 2.0, 4.0 - alpha};
  std::vector<double> level_value{D.back()};
  double resid_prev = std::abs(D[D.size() - 1] - D[D.size() - 2]);
  for (double pw : ladder) {
    if (D.size() < 2) break;
    const double r = std::pow(rho, pw);
    std::vector<double> E(D.size() - 1);
    for (size_t i = 0; i + 1 < D.size(); ++i)
      E[i] = (D[i + 1] - r * D[i]) / (1.0 - r);
    D = std::move(E);
    level_value.push_back(D.back());
    if (D.size() >= 2) {
      const double resid = std::abs(D[D.size() - 1] - D[D.size() - 2]);
      if (resid > 4.0 * resid_prev + 1e-9 * std::max(1.0, std::abs(D.back())))
        throw std::runtime_error(
            "neumann_limit: extrapolation residuals do not shrink (resid=" +
            std::to_string(resid) + ")");
      resid_prev = resid;
    }
  }
  if (err_out) {
    const size_t n = level_value.size();
    *err_out = (n >= 2 ? std::abs(level_value[n - 1] - level_value[n - 2]) : 0.0) +
               resid_prev;
  }
  if (neval_out) *neval_out = budget;

  const double pref = -std::exp((alpha - 1.0) * std::log(2.0) + std::lgamma(0.5 * alpha) -
                                std::lgamma(1.0 - 0.5 * alpha));
  return pref * D.back();
}

}  // namespace fraclap::ext
