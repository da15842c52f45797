#include "fraclap/dist.hpp"

#include <cmath>

#include "fraclap/dunkl1d.hpp"

namespace fraclap::dist {

using dunkl::QuadOpts;
using dunkl::weighted_halfline;
using quad::Integral;
using specfun::ConstantSet;

namespace {

double pole_location(const ConstantSet& c, int p) {
  return 2.0 * c.gamma_k() + c.d + 2.0 * p;
}

void check_not_pole(double alpha, const ConstantSet& c) {
  const double base = 2.0 * c.gamma_k() + c.d;
  if (alpha >= base - 1e-9) {
    const double frac = (alpha - base) / 2.0;
    const double near = std::round(frac);
    if (near >= 0.0 && std::abs(frac - near) * 2.0 < 1e-9)
      throw PoleError("power_pairing: alpha sits on the pole ladder; use residue()");
  }
}

// even-profile value minus its first n+1 Taylor terms, switching to the
// truncated remainder series near 0 to dodge cancellation
double profile_minus_taylor(const TestFunction& phi, int n, double r) {
  const auto& a = phi.profile_taylor;
  const double r2 = r * r;
  if (r < 0.25 && static_cast<int>(a.size()) > n + 1) {
    double sum = 0.0, pw = std::pow(r2, n + 1);
    for (size_t p = n + 1; p < a.size(); ++p, pw *= r2) sum += a[p] * pw;
    return sum;
  }
  double taylor = 0.0, pw = 1.0;
  for (int p = 0; p <= n; ++p, pw *= r2)
    taylor += (p < static_cast<int>(a.size()) ? a[p] : 0.0) * pw;
  return phi.even_part(r) - taylor;
}

}  // namespace

double power_pairing(double alpha, const TestFunction& phi, const ConstantSet& c,
                     const QuadOpts& opts, int force_n) {
  if (c.d != 1)
    throw std::domain_error("power_pairing: line functions pair with d = 1");
  check_not_pole(alpha, c);
  const double g2d = 2.0 * c.gamma_k() + c.d;

  if (alpha < g2d && force_n < 0) {
    // direct branch: (sigma/c_k) Int_0^inf phi_e(r) r^{2gamma+d-alpha-1} dr
    auto fe = [&phi](double r) { return phi.even_part(r); };
    Integral v = weighted_halfline(fe, g2d - alpha - 1.0, phi.decay_rate,
                                   phi.support_radius, 0.0, opts);
    return c.sigma_k_d / c.c_k * v.value;
  }

  int n = force_n;
  if (n < 0) n = static_cast<int>(std::floor((alpha - g2d) / 2.0)) + 1;
  if (n < 0) n = 0;
  if (!(n > (alpha - g2d) / 2.0))
    throw std::domain_error("power_pairing: continuation order too small");
  if (phi.profile_taylor.size() < static_cast<size_t>(n) + 1)
    throw std::domain_error("power_pairing: function lacks Taylor data for n=" +
                            std::to_string(n));

  // subtracted near part on (0,1]
  auto near_part = [&](double r) { return profile_minus_taylor(phi, n, r); };
  Integral near = weighted_halfline(
      [&](double r) { return r > 1.0 ? 0.0 : near_part(r); }, g2d - alpha - 1.0,
      0.0, 1.0, 0.0, opts);

  // rational pole terms
  double poles = 0.0;
  for (int p = 0; p <= n; ++p)
    poles += phi.profile_taylor[p] / (g2d + 2.0 * p - alpha);

  // smooth far part on [1, inf)
  auto far_fn = [&phi, g2d, alpha](double r) {
    return phi.even_part(r) * std::pow(r, g2d - alpha - 1.0);
  };
  const double R = std::isfinite(phi.support_radius)
                       ? phi.support_radius
                       : std::sqrt(100.0 / std::max(phi.decay_rate, 1e-2));
  Integral far = quad::integrate_adaptive(far_fn, 1.0, std::max(R, 2.0),
                                          opts.abs_tol, opts.rel_tol);

  return c.sigma_k_d / c.c_k * (near.value + poles + far.value);
}

double residue_closed_form(int p, const TestFunction& phi, const ConstantSet& c) {
  if (p < 0 || phi.profile_taylor.size() <= static_cast<size_t>(p))
    throw std::domain_error("residue_closed_form: missing Taylor coefficient");
  return -c.sigma_k_d * phi.profile_taylor[p] / c.c_k;
}

double residue(int p, const TestFunction& phi, const ConstantSet& c,
               const QuadOpts& opts) {
  if (p < 0 || p > 2)
    throw std::domain_error("residue: p must be in {0,1,2}");
  const double ap = pole_location(c, p);
  // two-sided geometric approach cancels the linear background
  std::vector<double> s;
  for (int j = 0; j <= 6; ++j) {
    const double h = 0.1 * std::pow(0.5, j);
    const double lo = (ap - h) * 1.0, hi = ap + h;
    const double g_lo = (lo - ap) * power_pairing(lo, phi, c, opts, p + 1);
    const double g_hi = (hi - ap) * power_pairing(hi, phi, c, opts, p + 1);
    s.push_back(0.5 * (g_lo + g_hi));
  }
  // Richardson on the even ladder h^2, h^4
  const double r2 = 0.25;
  for (double pw : {2.0, 4.0}) {
    const double r = std::pow(std::sqrt(r2), pw);
    for (size_t i = 0; i + 1 < s.size(); ++i) s[i] = (s[i + 1] - r * s[i]) / (1.0 - r);
    s.pop_back();
  }
  return s.back();
}

RieszCheck riesz_transform_check(double alpha, const TestFunction& phi,
                                 const ConstantSet& c, const QuadOpts& opts) {
  const double g2d = 2.0 * c.gamma_k() + c.d;
  if (!(alpha > 0.0 && alpha < g2d))
    throw PoleError("riesz_transform_check: alpha outside the regular strip");
  dunkl::DunklParams p(c.k);
  dunkl::Transform1D F(phi, p, opts);

  RieszCheck out;
  {
    auto fe = [&F](double r) { return F.even_part(r); };
    const double decay = F.decay_rate();
    Integral v = weighted_halfline(fe, g2d - alpha - 1.0, decay,
                                   std::numeric_limits<double>::infinity(), 0.0, opts);
    out.lhs = c.sigma_k_d / c.c_k * v.value;
  }
  {
    auto fe = [&phi](double r) { return phi.even_part(r); };
    Integral v = weighted_halfline(fe, alpha - 1.0, phi.decay_rate,
                                   phi.support_radius, 0.0, opts);
    out.rhs = c.d_k_alpha * c.sigma_k_d * v.value;
  }
  return out;
}

double riesz_moment_pairing(int p, const TestFunction& phi, const ConstantSet& c,
                            const QuadOpts& opts) {
  dunkl::DunklParams dp(c.k);
  dunkl::Transform1D F(phi, dp, opts);
  auto fe = [&F](double r) { return F.even_part(r); };
  Integral v = weighted_halfline(fe, 2.0 * c.gamma_k() + c.d - 1.0 + 2.0 * p,
                                 F.decay_rate(), std::numeric_limits<double>::infinity(),
                                 0.0, opts);
  return c.sigma_k_d / c.c_k * v.value;
}

double q_kernel(double alpha, double y, double x, const ConstantSet& c) {
  if (!(y > 0.0)) throw std::domain_error("q_kernel: y must be > 0");
  return c.d_k_alpha *
         std::pow(y * y + x * x, -(c.gamma_k() + 0.5 * (c.d - alpha)));
}

PairCheck q_kernel_transform_check(double alpha, double y, double x_norm,
                                   const ConstantSet& c, const QuadOpts& opts) {
  if (c.d < 2) throw std::domain_error("q_kernel_transform_check: needs d >= 2");
  const double nu = c.bessel_order();
  const double s = c.gamma_k() + 0.5 * (c.d - alpha);
  const double xi = std::abs(x_norm);

  // slowly decaying oscillatory radial integral: smooth start, then
  // accelerated cells between the scaled Bessel zeros
  const double pre = c.d_k_alpha * std::exp(-nu * std::log(2.0) - std::lgamma(nu + 1.0));
  auto q0 = [y, s](double r) { return std::pow(y * y + r * r, -s); };
  auto with_weight = [&](double r) {
    return q0(r) * specfun::normalized_j(nu, xi * r) * std::pow(r, 2.0 * nu + 1.0);
  };
  const double s0 = std::max(2.0, 6.0 / xi);
  Integral headp = weighted_halfline(
      [&](double r) { return r > s0 ? 0.0 : q0(r) * specfun::normalized_j(nu, xi * r); },
      2.0 * nu + 1.0, 0.0, s0, xi, opts);
  Integral tail = quad::integrate_bessel_cells(with_weight, nu, xi, s0, 120, 1e-10);

  PairCheck out;
  out.computed = pre * (headp.value + tail.value);
  out.closed_form = std::pow(y, 0.5 * alpha) *
                    specfun::bessel(specfun::BesselKind::K, 0.5 * alpha, y * xi) /
                    (c.c_k * std::exp((0.5 * alpha - 1.0) * std::log(2.0) +
                                      std::lgamma(0.5 * alpha)) *
                     std::pow(xi, 0.5 * alpha));
  return out;
}

PairCheck q_kernel_fraclap_check(double alpha, double y, double x_norm,
                                 const ConstantSet& c, const QuadOpts& opts) {
  if (c.d < 2) throw std::domain_error("q_kernel_fraclap_check: needs d >= 2");
  const double nu = c.bessel_order();
  const double a2 = 0.5 * alpha;
  // |xi|^alpha F q = z^{a2} K_{a2}(z)/(2^{a2-1}Gamma(a2) c_k) at z = y xi:
  // the singular power of the transform cancels against the multiplier,
  // leaving a smooth exponentially decaying spectral profile
  const double ck = c.c_k;
  const double mnorm = std::exp((a2 - 1.0) * std::log(2.0) + std::lgamma(a2));
  auto spectral = [a2, y, ck, mnorm](double xi) {
    const double z = y * xi;
    if (z <= 0.0) return 1.0 / ck;
    const double kz = specfun::bessel(specfun::BesselKind::K, a2, z);
    return kz == 0.0 ? 0.0 : std::pow(z, a2) * kz / (mnorm * ck);
  };
  const double window = 120.0 / y;
  auto g = [&spectral, nu, x_norm](double xi) {
    return spectral(xi) * specfun::normalized_j(nu, std::abs(x_norm) * xi);
  };
  Integral v =
      weighted_halfline(g, 2.0 * nu + 1.0, 0.0, window, std::abs(x_norm), opts);
  PairCheck out;
  out.computed = std::exp(-nu * std::log(2.0) - std::lgamma(nu + 1.0)) * v.value;
  const double gd2 = c.gamma_k() + 0.5 * c.d;
  out.closed_form = std::exp(std::lgamma(gd2 + a2) + gd2 * std::log(2.0) -
                             std::lgamma(a2)) /
                    c.c_k * std::pow(y, alpha) *
                    std::pow(y * y + x_norm * x_norm, -(gd2 + a2));
  return out;
}

double fundamental_solution(double alpha, double x, const ConstantSet& c) {
  if (x == 0.0) throw std::domain_error("fundamental_solution: singular at x = 0");
  return c.d_k_alpha * std::pow(std::abs(x), -(2.0 * c.gamma_k() + c.d - alpha));
}

double fundamental_pairing(const radial::RadialProfile& phi, double alpha,
                           const ConstantSet& c, const QuadOpts& opts) {
  // polar form: d_k sigma_k(d) Int_0^inf A_phi(r) r^{alpha-1} dr with A_phi
  // the radial fractional operator of phi (algebraic tail r^{-(2gamma+d+alpha)})
  auto A = [&phi, alpha, &c, &opts](double r) {
    return radial::radial_frac_laplacian(phi, r, alpha, c.k, c.d, opts,
                                         radial::RadialMode::Spectral);
  };
  QuadOpts inner = opts;
  inner.abs_tol = std::max(opts.abs_tol, 1e-9);
  inner.rel_tol = std::max(opts.rel_tol, 1e-9);
  Integral v = weighted_halfline(A, alpha - 1.0, 0.0,
                                 std::numeric_limits<double>::infinity(), 0.0, inner);
  return c.d_k_alpha * c.sigma_k_d * v.value;
}

}  // namespace fraclap::dist
