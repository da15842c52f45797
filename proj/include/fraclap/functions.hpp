#pragma once
#include <complex>
#include <functional>
#include <limits>
#include <string>
#include <vector>

// Schwartz-type inputs for the operator routes. A TestFunction is an
// evaluation callback on the line plus optional analytic extras: first and
// second derivatives, the known transform for the multiplicity it was built
// for, and the leading even-profile Taylor coefficients used by Pizzetti
// subtraction. Factories bind the multiplicity so the attached transform
// matches the parameters the function will be used with.

namespace fraclap {

enum class Parity { Even, Odd, None };

struct TestFunction {
  std::function<double(double)> eval;
  Parity parity = Parity::None;
  double decay_rate = 0.0;  // a > 0 when |f| <= C exp(-a x^2); 0 = unknown
  double support_radius = std::numeric_limits<double>::infinity();
  std::function<double(double)> deriv1;
  std::function<double(double)> deriv2;
  // known F_k f for the k the factory was called with (empty if none)
  std::function<std::complex<double>(double)> transform;
  double transform_decay_rate = 0.0;
  // a_p with even part of f = sum_p a_p x^{2p} + O(x^{2P+2}) near 0
  std::vector<double> profile_taylor;
  std::string name = "user";

  double operator()(double x) const { return eval(x); }
  double even_part(double x) const { return 0.5 * (eval(x) + eval(-x)); }
  double odd_part(double x) const { return 0.5 * (eval(x) - eval(-x)); }

  // derivative with central-difference fallback, h = cbrt(eps) (1+|x|)
  double d1(double x) const;
  double d2(double x) const;
};

// exp(-x^2/2); transform exp(-xi^2/2)
TestFunction make_gaussian(double k);
// exp(-a x^2); transform (2a)^{-(k+1/2)} exp(-xi^2/(4a))
TestFunction make_gaussian_scaled(double k, double a);
// x^2 exp(-x^2/2); transform (1+2k-xi^2) exp(-xi^2/2)
TestFunction make_poly_gaussian(double k);
// x exp(-x^2/2); transform -i xi exp(-xi^2/2)
TestFunction make_odd_gaussian(double k);
// smooth plateau: 1 on |x|<=1, C-infinity decay to 0 at |x|=2
TestFunction make_mollified_constant();
// natural cubic spline through (x_i, v_i); zero outside the data range
// (documented extrapolation cutoff = the range itself)
TestFunction make_from_table(std::vector<double> xs, std::vector<double> vs);
// constant 1 (no decay; only valid where the operation handles it)
TestFunction make_constant(double value = 1.0);

TestFunction make_by_name(const std::string& id, double k);

}  // namespace fraclap
