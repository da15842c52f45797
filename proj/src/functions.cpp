#include "fraclap/functions.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

namespace fraclap {

namespace {
const double kFdStep = std::cbrt(2.2e-16);
}

double TestFunction::d1(double x) const {
  if (deriv1) return deriv1(x);
  const double h = kFdStep * (1.0 + std::abs(x));
  return (eval(x + h) - eval(x - h)) / (2.0 * h);
}

double TestFunction::d2(double x) const {
  if (deriv2) return deriv2(x);
  const double h = std::sqrt(kFdStep) * (1.0 + std::abs(x));
  return (eval(x + h) - 2.0 * eval(x) + eval(x - h)) / (h * h);
}

TestFunction make_gaussian(double k) {
  TestFunction f;
  f.name = "gaussian";
  f.eval = [](double x) { return std::exp(-0.5 * x * x); };
  f.parity = Parity::Even;
  f.decay_rate = 0.5;
  f.deriv1 = [](double x) { return -x * std::exp(-0.5 * x * x); };
  f.deriv2 = [](double x) { return (x * x - 1.0) * std::exp(-0.5 * x * x); };
  f.transform = [](double xi) {
    return std::complex<double>(std::exp(-0.5 * xi * xi), 0.0);
  };
  f.transform_decay_rate = 0.5;
  f.profile_taylor = {1.0, -0.5, 0.125, -1.0 / 48.0, 1.0 / 384.0};
  (void)k;
  return f;
}

TestFunction make_gaussian_scaled(double k, double a) {
  if (!(a > 0.0)) throw std::domain_error("make_gaussian_scaled: a must be > 0");
  TestFunction f;
  f.name = "gaussian_scaled";
  f.eval = [a](double x) { return std::exp(-a * x * x); };
  f.parity = Parity::Even;
  f.decay_rate = a;
  f.deriv1 = [a](double x) { return -2.0 * a * x * std::exp(-a * x * x); };
  f.deriv2 = [a](double x) {
    return (4.0 * a * a * x * x - 2.0 * a) * std::exp(-a * x * x);
  };
  const double amp = std::pow(2.0 * a, -(k + 0.5));
  f.transform = [a, amp](double xi) {
    return std::complex<double>(amp * std::exp(-xi * xi / (4.0 * a)), 0.0);
  };
  f.transform_decay_rate = 0.25 / a;
  f.profile_taylor = {1.0, -a, 0.5 * a * a, -a * a * a / 6.0, a * a * a * a / 24.0};
  return f;
}

TestFunction make_poly_gaussian(double k) {
  TestFunction f;
  f.name = "poly_gaussian";
  f.eval = [](double x) { return x * x * std::exp(-0.5 * x * x); };
  f.parity = Parity::Even;
  f.decay_rate = 0.5;
  f.deriv1 = [](double x) { return (2.0 * x - x * x * x) * std::exp(-0.5 * x * x); };
  f.deriv2 = [](double x) {
    const double x2 = x * x;
    return (2.0 - 5.0 * x2 + x2 * x2) * std::exp(-0.5 * x * x);
  };
  f.transform = [k](double xi) {
    return std::complex<double>((1.0 + 2.0 * k - xi * xi) * std::exp(-0.5 * xi * xi), 0.0);
  };
  f.transform_decay_rate = 0.5;
  f.profile_taylor = {0.0, 1.0, -0.5, 0.125, -1.0 / 48.0};
  return f;
}

TestFunction make_odd_gaussian(double k) {
  TestFunction f;
  f.name = "odd_gaussian";
  f.eval = [](double x) { return x * std::exp(-0.5 * x * x); };
  f.parity = Parity::Odd;
  f.decay_rate = 0.5;
  f.deriv1 = [](double x) { return (1.0 - x * x) * std::exp(-0.5 * x * x); };
  f.deriv2 = [](double x) { return x * (x * x - 3.0) * std::exp(-0.5 * x * x); };
  f.transform = [](double xi) {
    return std::complex<double>(0.0, -xi * std::exp(-0.5 * xi * xi));
  };
  f.transform_decay_rate = 0.5;
  f.profile_taylor = {0.0, 0.0, 0.0, 0.0, 0.0};
  (void)k;
  return f;
}

TestFunction make_mollified_constant() {
  TestFunction f;
  f.name = "mollified_constant";
  f.eval = [](double x) {
    const double r = std::abs(x);
    if (r <= 1.0) return 1.0;
    if (r >= 2.0) return 0.0;
    const double s = r - 1.0;  // in (0,1)
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
  };
  f.parity = Parity::Even;
  f.support_radius = 2.0;
  f.profile_taylor = {1.0, 0.0, 0.0, 0.0, 0.0};
  return f;
}

TestFunction make_constant(double value) {
  TestFunction f;
  f.name = "constant";
  f.eval = [value](double) { return value; };
  f.parity = Parity::Even;
  f.deriv1 = [](double) { return 0.0; };
  f.deriv2 = [](double) { return 0.0; };
  f.profile_taylor = {value, 0.0, 0.0, 0.0, 0.0};
  return f;
}

namespace {

// natural cubic spline second-derivative solve
struct Spline {
  std::vector<double> x, y, m;
  double operator()(double t) const {
    if (x.empty()) return 0.0;
    if (t < x.front() || t > x.back()) return 0.0;
    auto it = std::upper_bound(x.begin(), x.end(), t);
    size_t i = std::min<size_t>(std::max<ptrdiff_t>(it - x.begin() - 1, 0), x.size() - 2);
    const double h = x[i + 1] - x[i];
    const double a = (x[i + 1] - t) / h, b = (t - x[i]) / h;
    return a * y[i] + b * y[i + 1] +
           ((a * a * a - a) * m[i] + (b * b * b - b) * m[i + 1]) * h * h / 6.0;
  }
};

Spline build_spline(std::vector<double> xs, std::vector<double> vs) {
  const size_t n = xs.size();
  if (n < 3 || vs.size() != n)
    throw std::domain_error("make_from_table: need >= 3 samples of equal length");
  std::vector<size_t> order(n);
  for (size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return xs[a] < xs[b]; });
  Spline s;
  s.x.resize(n);
  s.y.resize(n);
  for (size_t i = 0; i < n; ++i) {
    s.x[i] = xs[order[i]];
    s.y[i] = vs[order[i]];
  }
  for (size_t i = 1; i < n; ++i)
    if (s.x[i] == s.x[i - 1])
      throw std::domain_error("make_from_table: duplicate abscissa");
  // tridiagonal solve for natural end conditions
  std::vector<double> a(n, 0.0), b(n, 2.0), c(n, 0.0), r(n, 0.0);
  for (size_t i = 1; i + 1 < n; ++i) {
    const double hm = s.x[i] - s.x[i - 1], hp = s.x[i + 1] - s.x[i];
    a[i] = hm / (hm + hp);
    c[i] = hp / (hm + hp);
    r[i] = 6.0 / (hm + hp) *
           ((s.y[i + 1] - s.y[i]) / hp - (s.y[i] - s.y[i - 1]) / hm);
  }
  std::vector<double> cp(n, 0.0), rp(n, 0.0);
  cp[0] = c[0] / b[0];
  rp[0] = r[0] / b[0];
  for (size_t i = 1; i < n; ++i) {
    const double den = b[i] - a[i] * cp[i - 1];
    cp[i] = c[i] / den;
    rp[i] = (r[i] - a[i] * rp[i - 1]) / den;
  }
  s.m.assign(n, 0.0);
  s.m[n - 1] = rp[n - 1];
  for (size_t i = n - 1; i-- > 0;) s.m[i] = rp[i] - cp[i] * s.m[i + 1];
  return s;
}

}  // namespace

TestFunction make_from_table(std::vector<double> xs, std::vector<double> vs) {
  auto sp = std::make_shared<Spline>(build_spline(std::move(xs), std::move(vs)));
  TestFunction f;
  f.name = "user_table";
  f.eval = [sp](double x) { return (*sp)(x); };
  f.support_radius =
      std::max(std::abs(sp->x.front()), std::abs(sp->x.back()));
  return f;
}

TestFunction make_by_name(const std::string& id, double k) {
  if (id == "gaussian") return make_gaussian(k);
  if (id == "poly-gaussian") return make_poly_gaussian(k);
  if (id == "mollified-constant") return make_mollified_constant();
  throw std::domain_error("unknown function id: " + id);
}

}  // namespace fraclap
