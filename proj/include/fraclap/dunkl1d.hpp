#pragma once
#include <complex>
#include <memory>

#include "fraclap/functions.hpp"
#include "fraclap/quadrature.hpp"
#include "fraclap/specfun.hpp"

// Rank-one differential-difference calculus: weight, kernel, operator,
// Laplacian, transform pair, generalized translation, spherical mean, heat
// kernel/semigroup and convolution. Transform-domain work is split by parity
// into two real Bessel-weighted half-line integrals: the even sector pairs
// with the normalized J of order k-1/2, the odd sector with order k+1/2.

namespace fraclap::dunkl {

struct DunklParams {
  double k = 0.0;
  double c_k = 0.0;  // 2^{k+1/2} Gamma(k+1/2)

  explicit DunklParams(double k_ = 0.0);
  double gamma_k() const { return k; }
};

// Quadrature budgets; defaults are compiled in, the CLI may scale them.
struct QuadOpts {
  double abs_tol = 1e-11;
  double rel_tol = 1e-11;
  int jacobi_n = 72;        // translation rule size
  int graded_panels = 28;   // panels on a singular first interval
  int panel_points = 16;    // Gauss points per smooth panel
  double scale = 1.0;       // global budget multiplier

  int n_jacobi() const { return std::max(8, int(jacobi_n * scale)); }
  int n_graded() const { return std::max(8, int(graded_panels * scale)); }
};

double weight(double x, const DunklParams& p);

// E_k(i lambda x) = J~_{k-1/2}(lambda x) + i lambda x J~_{k+1/2}(lambda x)/(2k+1)
std::complex<double> dunkl_kernel(double lambda, double x, const DunklParams& p);

// T_k f(x) = f'(x) + k (f(x) - f(-x))/x, with the continuous extension
// (1+2k) f'(0) at the origin.
double dunkl_derivative(const TestFunction& f, double x, const DunklParams& p);

// Delta_k f = f'' + (2k/x) f' - (k/x^2)(f(x) - f(-x)); at x = 0 the even
// smooth extension (1+2k) f''(0).
double dunkl_laplacian_1d(const TestFunction& f, double x, const DunklParams& p);

// Transform pair. The forward transform uses the known transform callback
// when the function carries one, unless force_quadrature is set.
std::complex<double> dunkl_transform(const TestFunction& f, double xi,
                                     const DunklParams& p, const QuadOpts& opts = {},
                                     bool force_quadrature = false);
std::complex<double> inverse_dunkl_transform(const TestFunction& F, double x,
                                             const DunklParams& p,
                                             const QuadOpts& opts = {});

// Transform-domain function H(xi) = re_even(xi) + i im_odd(xi) of a real
// function: the real part is even, the imaginary part odd.
struct SpectralFn {
  std::function<double(double)> re_even;   // sampled at xi >= 0
  std::function<double(double)> im_odd;    // empty means identically zero
  double decay_rate = 0.0;                 // Gaussian envelope hint
  double cutoff = 0.0;                     // hard cutoff (0 = none)
};
std::complex<double> inverse_spectral(const SpectralFn& H, double x,
                                      const DunklParams& p, const QuadOpts& opts = {});

// Memoizing view of F_k f as two real half-line functions.
class Transform1D {
 public:
  Transform1D(const TestFunction& f, const DunklParams& p, QuadOpts opts = {},
              bool force_quadrature = false);
  double even_part(double xi) const;  // Re F_k f (even in xi)
  double odd_part(double xi) const;   // Im F_k f (odd in xi)
  std::complex<double> operator()(double xi) const;
  double decay_rate() const { return decay_; }
  long evals() const;

 private:
  struct Impl;
  std::shared_ptr<Impl> impl_;
  double decay_ = 0.0;
};

// Roesler's generalized translation tau^x f(y) (k = 0 degenerates to the
// classical shift f(x+y)). Evaluated in the regularized form
//   tau^x f(y) = Int [ f_e(w) + (x-y) f_o(w)/w ] (1+t) h_k(t) dt,
// w = sqrt(x^2+y^2-2xyt), which is smooth through w = 0, with
// h_k(t) = Gamma(k+1/2)/(sqrt(pi) Gamma(k)) (1-t^2)^{k-1} carried by a
// Gauss-Jacobi rule. The normalization integrates to 1, so tau^x 1 = 1.
double translate(const TestFunction& f, double x, double y, const DunklParams& p,
                 const QuadOpts& opts = {});

// (tau^x f(r) + tau^x f(-r)) / 2
double spherical_mean_1d(const TestFunction& f, double x, double r,
                         const DunklParams& p, const QuadOpts& opts = {});

// Gamma_k(t,x) = exp(-x^2/4t) / ((2t)^{k+1/2} c_k); unit mass against w_k.
double heat_kernel(double t, double x, const DunklParams& p);

enum class SemigroupMode { Spectral, Translation };

// exp(-t Delta_k) f (x). Spectral mode applies the multiplier exp(-t xi^2);
// translation mode integrates f against the translated heat kernel.
double heat_semigroup(const TestFunction& f, double t, double x,
                      const DunklParams& p, const QuadOpts& opts = {},
                      SemigroupMode mode = SemigroupMode::Spectral);

// exp(-t Delta_k) f (x) - f(x) without cancellation (expm1 multiplier).
double heat_semigroup_minus_identity(const TestFunction& f, double t, double x,
                                     const DunklParams& p, const QuadOpts& opts = {});

// Convolution pinned by the transform rule F_k(f * g) = c_k F_k f F_k g
// (the placement that makes the Poisson solution U = p * u satisfy
// F_k U = m(y|xi|) F_k u and makes f * heat kernel the heat semigroup).
double convolve(const TestFunction& f, const TestFunction& g, double x,
                const DunklParams& p, const QuadOpts& opts = {});

// F_k^{-1}( |xi|^{mult_power} mult(|xi|) F_k f )(x) for real f. The
// |xi|^{mult_power} factor is carried as an exact quadrature weight so
// fractional powers keep full accuracy through the origin; mult itself must
// be smooth. extra_decay is the Gaussian decay the multiplier adds,
// support_hint a hard cutoff when it has one.
quad::Integral apply_spectral_multiplier(
    const Transform1D& F, const std::function<double(double)>& mult, double x,
    const DunklParams& p, const QuadOpts& opts, double extra_decay = 0.0,
    double support_hint = std::numeric_limits<double>::infinity(),
    double mult_power = 0.0);

// Int h(x) w_k(x) dx over the full line (parity-aware half-line quadrature).
quad::Integral integrate_weighted_line(const std::function<double(double)>& h,
                                       const DunklParams& p, double decay_rate,
                                       double support_radius,
                                       const QuadOpts& opts = {});

// Int_0^inf g(x) x^{pow} dx for smooth g with Gaussian decay hint / finite
// support and an oscillation frequency hint; pow > -1 may be singular.
quad::Integral weighted_halfline(const std::function<double(double)>& g, double pow,
                                 double decay_rate, double support_radius,
                                 double osc_freq, const QuadOpts& opts = {});

}  // namespace fraclap::dunkl
