#pragma once
#include <functional>
#include <stdexcept>
#include <vector>

// Integration engines: Gauss rules for weighted finite intervals, adaptive
// panels, semi-infinite integrals with tail control, annuli for principal
// value experiments, graded meshes for endpoint singularities and an
// accelerated cell sum for oscillatory Bessel-type tails.

namespace fraclap::quad {

using Fn = std::function<double(double)>;

enum class Domain { Legendre, Jacobi, SemiInfinite };

struct QuadRule {
  std::vector<double> nodes;    // strictly increasing, inside the open domain
  std::vector<double> weights;  // positive
  Domain domain = Domain::Legendre;
  double p = 0.0, q = 0.0;      // Jacobi exponents (weight (1-x)^p (1+x)^q)

  int size() const { return static_cast<int>(nodes.size()); }

  // sum w_i f(x_i)
  double apply(const Fn& f) const {
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += weights[i] * f(nodes[i]);
    return s;
  }
  // same rule mapped affinely from (-1,1) onto (a,b); valid for p=q=0 rules
  double apply_mapped(const Fn& f, double a, double b) const {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double s = 0.0;
    for (int i = 0; i < size(); ++i) s += weights[i] * f(c + h * nodes[i]);
    return h * s;
  }
};

// Golub-Welsch rule for the weight (1-x)^p (1+x)^q on (-1,1). Exact for
// polynomials of degree <= 2n-1 against the weight. Deterministic: same
// inputs give bit-identical nodes and weights.
QuadRule gauss_jacobi(int n, double p, double q);

// p = q = 0 special case, cached for the common panel sizes.
const QuadRule& gauss_legendre(int n);

struct TailBudget {
  double cutoff = 1.0;       // end of the first panel
  double rel_tail = 1e-13;   // stop once panels fall below this fraction
  int max_levels = 60;       // cap on doubling panels
};

struct Integral {
  double value = 0.0;
  double err = 0.0;    // conservative absolute bound
  long neval = 0;

  Integral& operator+=(const Integral& o) {
    value += o.value;
    err += o.err;
    neval += o.neval;
    return *this;
  }
};

// Adaptive bisection with a nested Gauss pair per panel.
Integral integrate_adaptive(const Fn& f, double a, double b,
                            double abs_tol = 1e-12, double rel_tol = 1e-12,
                            int max_depth = 40);

// Integral over (0, inf): adaptive panels up to the running cutoff plus a
// geometric tail estimate, which is added to the reported error bound.
// Throws std::runtime_error when a sample is not finite.
Integral integrate_semi_infinite(const Fn& f, TailBudget budget = {},
                                 double abs_tol = 1e-12, double rel_tol = 1e-12);

// Plain quadrature of f over {eps <= |y| <= R} on the line.
double annulus_integral(const Fn& f, double eps, double R);

// n+1 points from a to b clustered at a as a + (b-a) (i/n)^grading.
std::vector<double> graded_mesh(double a, double b, int n, double grading);

// Integrate f over a graded panel chain from a (singular end) to b.
Integral integrate_graded(const Fn& f, double a, double b, double grading,
                          int n_panels, int pts_per_panel = 16);

// Accelerated sum over cells bounded by the scaled Bessel zeros
// j_{nu,m}/omega: integrates f over (r0, z_1), (z_1, z_2), ... and applies
// iterated Aitken extrapolation to the partial sums. Intended for
// conditionally convergent oscillatory tails.
Integral integrate_bessel_cells(const Fn& f, double nu, double omega,
                                double r0, int max_cells = 80,
                                double abs_tol = 1e-11);

}  // namespace fraclap::quad
