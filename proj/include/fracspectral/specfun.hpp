#pragma once

#include "fracspectral/errors.hpp"

namespace fracspectral::specfun {

// ln Gamma(x) for x > 0. Relative error below 1e-13 on [0.5, 200].
double log_gamma(double x);

// Gamma(x) for x not a non-positive integer; negative arguments via the
// reflection formula Gamma(1-z) Gamma(z) = pi / sin(pi z).
double gamma(double x);

// Rising Pochhammer symbol (q)_n = q (q+1) ... (q+n-1), (q)_0 = 1.
double pochhammer(double q, int n);

// Gauss hypergeometric function 2F1(a, b; c; x) on x in [0, 1].
// At x = 1 requires c - a - b > 0 and evaluates the Gauss sum
// Gamma(c) Gamma(c-a-b) / (Gamma(c-a) Gamma(c-b)).
double gauss_2f1(double a, double b, double c, double x);

// Gamma(x) split into log-magnitude and sign; valid for any non-pole x.
struct SignedLogGamma {
    double log_abs;
    int sign;  // +1 or -1
};
SignedLogGamma signed_log_gamma(double x);

// sin(pi x) with exact integer range reduction.
double sin_pi(double x);

// Euler beta function B(a, b), a, b > 0.
double beta(double a, double b);

// True if x is within 1e-12 of an integer <= 0.
bool is_nonpositive_integer(double x);

}  // namespace fracspectral::specfun
