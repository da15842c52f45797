#include "fraclap/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include "fraclap/specfun.hpp"

namespace fraclap::quad {

namespace {

// Eigenvalues and first eigenvector components of a symmetric tridiagonal
// matrix (implicit-shift QL, EISPACK imtql2 lineage). d: diagonal, e:
// subdiagonal (e[0] unused). first[i] receives the first component of the
// i-th eigenvector.
void sym_tridiag_eig(std::vector<double>& d, std::vector<double>& e,
                     std::vector<double>& first) {
  const int n = static_cast<int>(d.size());
  first.assign(n, 0.0);
  if (n == 0) return;
  // z holds the first row of the accumulated rotations
  std::vector<double>& z = first;
  z[0] = 1.0;
  if (n == 1) {
    return;
  }
  for (int i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    while (true) {
      int m;
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= 1e-300 + 2.3e-16 * dd) break;
      }
      if (m == l) break;
      if (++iter > 60) throw std::runtime_error("sym_tridiag_eig: no convergence");
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0, c = 1.0, p = 0.0;
      for (int i = m - 1; i >= l; --i) {
        double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
        f = z[i + 1];
        z[i + 1] = s * z[i] + c * f;
        z[i] = c * z[i] - s * f;
      }
      if (r == 0.0 && m - 1 >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    }
  }
  // sort ascending, carrying the first components along
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](int a, int b) { return d[a] < d[b]; });
  std::vector<double> ds(n), zs(n);
  for (int i = 0; i < n; ++i) {
    ds[i] = d[idx[i]];
    zs[i] = z[idx[i]];
  }
  d = std::move(ds);
  z = std::move(zs);
}

double log_beta(double a, double b) {
  return std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
}

}  // namespace

QuadRule gauss_jacobi(int n, double p, double q) {
  if (n < 1) throw std::domain_error("gauss_jacobi: n must be >= 1");
  if (!(p > -1.0) || !(q > -1.0))
    throw std::domain_error("gauss_jacobi: exponents must be > -1");

  std::vector<double> diag(n), sub(n, 0.0), first;
  const double pq = p + q;
  diag[0] = (q - p) / (pq + 2.0);
  for (int j = 1; j < n; ++j) {
    const double t = 2.0 * j + pq;
    diag[j] = (q * q - p * p) / (t * (t + 2.0));
    double b2;
    if (j == 1)
      b2 = 4.0 * (p + 1.0) * (q + 1.0) / ((pq + 2.0) * (pq + 2.0) * (pq + 3.0));
    else
      b2 = 4.0 * j * (j + p) * (j + q) * (j + pq) /
           (t * t * (t + 1.0) * (t - 1.0));
    sub[j] = std::sqrt(b2);
  }

  sym_tridiag_eig(diag, sub, first);

  const double mu0 = std::exp((pq + 1.0) * std::log(2.0) + log_beta(p + 1.0, q + 1.0));
  QuadRule rule;
  rule.domain = (p == 0.0 && q == 0.0) ? Domain::Legendre : Domain::Jacobi;
  rule.p = p;
  rule.q = q;
  rule.nodes = diag;
  rule.weights.resize(n);
  for (int i = 0; i < n; ++i) rule.weights[i] = mu0 * first[i] * first[i];
  return rule;
}

const QuadRule& gauss_legendre(int n) {
  static std::map<int, QuadRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, gauss_jacobi(n, 0.0, 0.0)).first;
  return it->second;
}

Integral integrate_adaptive(const Fn& f, double a, double b, double abs_tol,
                            double rel_tol, int max_depth) {
  if (!(a < b)) {
    if (a == b) return {};
    throw std::domain_error("integrate_adaptive: empty interval");
  }
  const QuadRule& lo = gauss_legendre(16);
  const QuadRule& hi = gauss_legendre(32);

  struct Panel {
    double a, b, tol;
    int depth;
  };
  std::vector<Panel> stack{{a, b, abs_tol, 0}};
  Integral out;
  double running = 0.0;
  int panels = 0;
  constexpr int kMaxPanels = 2000;
  while (!stack.empty()) {
    Panel pan = stack.back();
    stack.pop_back();
    double coarse = lo.apply_mapped(f, pan.a, pan.b);
    double fine = hi.apply_mapped(f, pan.a, pan.b);
    out.neval += lo.size() + hi.size();
    ++panels;
    if (!std::isfinite(fine) || !std::isfinite(coarse))
      throw std::runtime_error("integrate_adaptive: non-finite integrand sample in [" +
                               std::to_string(pan.a) + "," + std::to_string(pan.b) + "]");
    const double err = std::abs(fine - coarse);
    // noise floor: never chase differences at the roundoff of the panel scale
    const double local_ok =
        std::max({pan.tol, rel_tol * std::abs(running),
                  5e-15 * (std::abs(fine) + std::abs(coarse))});
    if (err <= local_ok || pan.depth >= max_depth || panels >= kMaxPanels) {
      out.value += fine;
      out.err += err;
      running += std::abs(fine);
    } else {
      const double m = 0.5 * (pan.a + pan.b);
      stack.push_back({pan.a, m, 0.5 * pan.tol, pan.depth + 1});
      stack.push_back({m, pan.b, 0.5 * pan.tol, pan.depth + 1});
    }
  }
  return out;
}

Integral integrate_semi_infinite(const Fn& f, TailBudget budget, double abs_tol,
                                 double rel_tol) {
  Integral out;
  double a = 0.0, b = std::max(budget.cutoff, 1e-8);
  double prev_mag = 0.0;
  double total_mag = 0.0;
  for (int level = 0; level < budget.max_levels; ++level) {
    Integral part = integrate_adaptive(f, a, b, abs_tol * 0.25, rel_tol * 0.25);
    out += part;
    const double mag = std::abs(part.value);
    total_mag = std::max(total_mag, std::abs(out.value));
    const bool decaying = level > 0 && mag < prev_mag;
    const bool small = mag <= std::max(budget.rel_tail * (total_mag + 1e-300), abs_tol);
    if (level > 0 && small && decaying) {
      // geometric tail bound from the observed decay ratio
      double ratio = prev_mag > 0.0 ? std::min(mag / prev_mag, 0.9) : 0.5;
      out.err += mag * ratio / (1.0 - ratio);
      return out;
    }
    prev_mag = mag;
    a = b;
    b *= 2.0;
  }
  // ran out of levels; report the unresolved tail as error
  out.err += std::max(prev_mag, budget.rel_tail * total_mag);
  return out;
}

double annulus_integral(const Fn& f, double eps, double R) {
  if (!(eps > 0.0) || !(eps < R))
    throw std::domain_error("annulus_integral: need 0 < eps < R");
  Integral left = integrate_adaptive([&f](double y) { return f(-y); }, eps, R);
  Integral right = integrate_adaptive(f, eps, R);
  return left.value + right.value;
}

std::vector<double> graded_mesh(double a, double b, int n, double grading) {
  if (n < 1) throw std::domain_error("graded_mesh: n must be >= 1");
  std::vector<double> pts(n + 1);
  for (int i = 0; i <= n; ++i)
    pts[i] = a + (b - a) * std::pow(static_cast<double>(i) / n, grading);
  return pts;
}

Integral integrate_graded(const Fn& f, double a, double b, double grading,
                          int n_panels, int pts_per_panel) {
  const auto mesh = graded_mesh(a, b, n_panels, grading);
  const QuadRule& lo = gauss_legendre(pts_per_panel);
  const QuadRule& hi = gauss_legendre(2 * pts_per_panel);
  Integral out;
  for (int i = 0; i < n_panels; ++i) {
    const double coarse = lo.apply_mapped(f, mesh[i], mesh[i + 1]);
    const double fine = hi.apply_mapped(f, mesh[i], mesh[i + 1]);
    if (!std::isfinite(fine))
      throw std::runtime_error("integrate_graded: non-finite integrand sample");
    out.value += fine;
    out.err += std::abs(fine - coarse);
    out.neval += lo.size() + hi.size();
  }
  return out;
}

Integral integrate_bessel_cells(const Fn& f, double nu, double omega, double r0,
                                int max_cells, double abs_tol) {
  if (!(omega > 0.0))
    throw std::domain_error("integrate_bessel_cells: omega must be > 0");
  std::vector<double> partial;
  partial.reserve(max_cells);
  Integral out;
  double a = r0;
  double sum = 0.0;
  int m = 1;
  // skip zeros below the starting point
  while (specfun::bessel_j_zero(nu, m) / omega <= r0) ++m;
  for (int cell = 0; cell < max_cells; ++cell, ++m) {
    const double b = specfun::bessel_j_zero(nu, m) / omega;
    Integral part = integrate_adaptive(f, a, b, abs_tol * 0.1, 1e-13, 30);
    out.neval += part.neval;
    sum += part.value;
    partial.push_back(sum);
    a = b;
    if (cell >= 6 && std::abs(part.value) < 0.02 * abs_tol) break;
  }
  // iterated Aitken extrapolation of the partial sums
  std::vector<double> s = partial;
  double best = s.back();
  double err = std::abs(s.size() > 1 ? s[s.size() - 1] - s[s.size() - 2] : s.back());
  while (s.size() >= 3) {
    std::vector<double> t(s.size() - 2);
    for (size_t i = 0; i + 2 < s.size(); ++i) {
      const double d1 = s[i + 1] - s[i];
      const double d2 = s[i + 2] - s[i + 1];
      const double den = d2 - d1;
      t[i] = std::abs(den) > 1e-300 ? s[i + 2] - d2 * d2 / den : s[i + 2];
    }
    if (t.empty()) break;
    const double change = std::abs(t.back() - best);
    best = t.back();
    err = change + 1e-16 * std::abs(best);
    s = std::move(t);
    if (err < 0.05 * abs_tol) break;
  }
  out.value = best;
  out.err += err;
  return out;
}

}  // namespace fraclap::quad
