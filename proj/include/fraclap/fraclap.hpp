#pragma once
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fraclap/dunkl1d.hpp"
#include "fraclap/specfun.hpp"

// Five computationally independent realizations of the rank-one fractional
// operator and the cross-route consistency engine. The spectral route is the
// reference (fewest nested quadratures); the singular-integral routes share
// the half-line normalization under which the pointwise constant reduces to
// the classical one at k = 0.

namespace fraclap::routes {

enum class RouteId { Spectral, Pointwise, SphericalMean, Bochner, Extension };

const char* route_name(RouteId id);
std::optional<RouteId> route_from_name(const std::string& name);
std::vector<RouteId> all_routes();

struct RouteValue {
  RouteId route = RouteId::Spectral;
  double value = 0.0;
  double err_est = 0.0;  // conservative absolute bound
  long budget = 0;       // integrand evaluations consumed
};

struct ConsistencyReport {
  double point = 0.0;
  double alpha = 0.0;
  double k = 0.0;
  std::vector<RouteValue> values;          // deterministic route order
  std::map<std::string, std::string> errors;  // per-route failures, recorded
  double max_pairwise_dev = 0.0;
  double max_abs_value = 0.0;
  bool pass = false;
};

enum class PointwiseMode { Symmetric, Unrolled };

// F_k^{-1}(|xi|^alpha F_k u)(x)
RouteValue spectral_route(const TestFunction& u, double x, double alpha,
                          const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {});

// (1/gamma_{k,d}(alpha)) Int_0^inf [2u(x) - tau^x u(y) - tau^x u(-y)]
//   y^{-1-alpha} dy  (the weight w_k and |y|^{-alpha-2k-1} combine to
// y^{-1-alpha} on the half-line). Unrolled mode expands both translations
// over the Jacobi weight as one double integral.
RouteValue pointwise_route(const TestFunction& u, double x, double alpha,
                           const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {},
                           PointwiseMode mode = PointwiseMode::Symmetric);

// (sigma_k(d)/gamma_{k,d}(alpha)) Int_0^inf [u(x) - M_r u(x)] r^{-1-alpha} dr
RouteValue spherical_route(const TestFunction& u, double x, double alpha,
                           const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {});

// (1/|Gamma(-alpha/2)|) Int_0^inf [e^{-t Delta_k}u(x) - u(x)] t^{-1-alpha/2} dt
RouteValue bochner_route(const TestFunction& u, double x, double alpha,
                         const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {});

// weighted Neumann limit of the extension solution
RouteValue extension_route(const TestFunction& u, double x, double alpha,
                           const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {});

RouteValue run_route(RouteId id, const TestFunction& u, double x, double alpha,
                     const dunkl::DunklParams& p, const dunkl::QuadOpts& opts = {});

// Evaluates the requested routes at each point. Route failures are recorded
// in the report rather than thrown. Verdict: max pairwise deviation at the
// point <= tol * max(1, max |route value|).
std::vector<ConsistencyReport> cross_check(const TestFunction& u,
                                           const std::vector<double>& points,
                                           double alpha, const dunkl::DunklParams& p,
                                           double tol,
                                           const std::vector<RouteId>& routes,
                                           const dunkl::QuadOpts& opts = {});

}  // namespace fraclap::routes
