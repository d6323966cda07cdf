#pragma once

// Test-only reference computations, independent of the library's evaluation
// paths: double-exponential quadrature for singular integrals, a long-double
// 2F1 series, finite-difference stencils, and the Riemann-Liouville / Caputo
// closed forms on power functions.

#include <cmath>
#include <functional>

namespace oracles {

// Integrand receives (x, x - a, b - x); the exact endpoint distances keep
// singular factors like (b - x)^{-0.6} accurate at the extreme nodes.
using SingularIntegrand = std::function<double(double, double, double)>;

// Tanh-sinh quadrature on (a, b); handles integrable endpoint singularities.
double tanh_sinh(const SingularIntegrand& f, double a, double b);

// Plain variant for integrands given as f(x).
double tanh_sinh(const std::function<double(double)>& f, double a, double b);

// 2F1 power series in long double, fixed term count (oracle only).
long double series_2f1(long double a, long double b, long double c, long double x,
                       int terms = 200);

// Fourth-order central first-derivative stencil.
double central_diff4(const std::function<double(double)>& f, double x, double h);

// Left Riemann-Liouville derivative of x^g of order mu in (1, 2):
//   D^2 D^{-(2-mu)} x^g = G(g+1)/G(g+1-mu) x^{g-mu}
double rl_derivative_power(double mu, double g, double x);

// Flux G(x) = r D^{-(2-alpha)} D u + (1-r) D^{-(2-alpha)*} D u for
// u = x^beta (1-x)^{alpha-beta} x^n, by singular-kernel quadrature.
double frac_flux_weighted_monomial(double alpha, double r, double beta, int n, double x);

// Brute-force evaluation of L_r^alpha [x^beta (1-x)^{alpha-beta} x^n](x):
// singular-kernel quadrature of the two one-sided fractional integrals of the
// derivative, then a fourth-order outer derivative stencil (h = 1e-4).
double apply_L_numeric(double alpha, double r, double beta, int n, double x);

}  // namespace oracles
