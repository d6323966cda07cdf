#pragma once

#include "fracspectral/errors.hpp"

namespace fracspectral::kernelspace {

// r(beta) = sin(pi beta) / (sin(pi (alpha - beta)) + sin(pi beta)).
double r_from_beta(double alpha, double beta);

// Inverse map: the unique beta in (alpha - 1, 1) with r_from_beta(alpha, beta) = r.
// r = 1/2 returns exactly alpha/2. Bisection preceded by a sign-change scan;
// multiple sign changes raise NumericError rather than silently picking one.
double beta_from_r(double alpha, double r);

// Exponents of the kernel function k(x) = x^p (1-x)^q:
// p = beta - 1, q = alpha - beta - 1, satisfying
//   (i)  3 - alpha + p + q = 1,
//   (ii) r sin(pi(-q)) = (1 - r) sin(pi(-p)).
struct KernelExponents {
    double p;
    double q;
};
KernelExponents kernel_exponents(double alpha, double r);

struct KernelDescription {
    double alpha;
    double r;
    double beta;
    double p;
    double q;
    double K_at_one;  // normalization of the nonconstant kernel member
};
KernelDescription describe(double alpha, double r);

// k(x) = x^p (1-x)^q.
double kernel_k(double alpha, double r, double x);

// K(x) = int_0^x k = x^{p+1}/(p+1) 2F1(-q, p+1; p+2; x); K(0) = 0,
// strictly increasing.
double kernel_K(double alpha, double r, double x);

// One-sided fluxes D D^{-(2-alpha)} k and D D^{-(2-alpha)*} k in closed form.
double kernel_flux_left(double alpha, double r, double x);
double kernel_flux_right(double alpha, double r, double x);

// r * flux_left + (1-r) * flux_right; contract: magnitude below 1e-6 of
// either weighted one-sided term for admissible parameters.
double kernel_annihilation_residual(double alpha, double r, double x);

// Shift coefficients for nonhomogeneous boundary data: with u0 the
// homogeneous solution, u = u0 + c1 + c2 K(x) satisfies u(0) = A, u(1) = B.
struct ShiftCoefficients {
    double c1;
    double c2;
};
ShiftCoefficients nonhomogeneous_shift(double alpha, double r, double A, double B);

}  // namespace fracspectral::kernelspace
