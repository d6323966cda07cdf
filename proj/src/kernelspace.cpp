#include "fracspectral/kernelspace.hpp"

#include <cmath>
#include <vector>

#include "fracspectral/specfun.hpp"

namespace fracspectral::kernelspace {

using specfun::gauss_2f1;
using specfun::sin_pi;

namespace {

void check_params(double alpha, double r) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("alpha must lie in (1, 2)");
    if (!(r > 0.0 && r < 1.0)) throw DomainError("r must lie in (0, 1)");
}

// Residual of condition (ii): g(beta) = r sin(pi(alpha-beta)) - (1-r) sin(pi beta).
double condition_residual(double alpha, double r, double beta) {
    return r * sin_pi(alpha - beta) - (1.0 - r) * sin_pi(beta);
}

}  // namespace

double r_from_beta(double alpha, double beta) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("alpha must lie in (1, 2)");
    if (!(beta > alpha - 1.0 && beta < 1.0))
        throw DomainError("beta must lie in (alpha - 1, 1)");
    const double sb = sin_pi(beta), sab = sin_pi(alpha - beta);
    return sb / (sab + sb);
}

double beta_from_r(double alpha, double r) {
    check_params(alpha, r);
    if (r == 0.5) return alpha / 2.0;

    const double lo = alpha - 1.0 + 1e-9, hi = 1.0 - 1e-9;

    // Scan for sign changes at 1e-3 resolution before bisecting; the p-values
    // curve suggests a single branch but monotonicity is not a given.
    const int scan = static_cast<int>((hi - lo) / 1e-3) + 1;
    double a = lo, fa = condition_residual(alpha, r, a);
    double bracket_a = 0.0, bracket_b = 0.0;
    int sign_changes = 0;
    for (int k = 1; k <= scan; ++k) {
        const double b = lo + (hi - lo) * k / scan;
        const double fb = condition_residual(alpha, r, b);
        if (fa == 0.0) return a;
        if (fa * fb < 0.0) {
            ++sign_changes;
            bracket_a = a;
            bracket_b = b;
        }
        a = b;
        fa = fb;
    }
    if (sign_changes == 0) throw NumericError("beta_from_r: no admissible root bracketed");
    if (sign_changes > 1) throw NumericError("beta_from_r: multiple roots in (alpha-1, 1)");

    double x0 = bracket_a, x1 = bracket_b;
    double f0 = condition_residual(alpha, r, x0);
    while (x1 - x0 > 1e-13) {
        const double xm = 0.5 * (x0 + x1);
        const double fm = condition_residual(alpha, r, xm);
        if (fm == 0.0) return xm;
        if (f0 * fm < 0.0) {
            x1 = xm;
        } else {
            x0 = xm;
            f0 = fm;
        }
    }
    return 0.5 * (x0 + x1);
}

KernelExponents kernel_exponents(double alpha, double r) {
    const double beta = beta_from_r(alpha, r);
    return {beta - 1.0, alpha - beta - 1.0};
}

KernelDescription describe(double alpha, double r) {
    const double beta = beta_from_r(alpha, r);
    const auto [p, q] = KernelExponents{beta - 1.0, alpha - beta - 1.0};
    return {alpha, r, beta, p, q, kernel_K(alpha, r, 1.0)};
}

double kernel_k(double alpha, double r, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("kernel_k: x must lie in (0, 1)");
    const auto [p, q] = kernel_exponents(alpha, r);
    return std::pow(x, p) * std::pow(1.0 - x, q);
}

double kernel_K(double alpha, double r, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("kernel_K: x must lie in [0, 1]");
    if (x == 0.0) return 0.0;
    const auto [p, q] = kernel_exponents(alpha, r);
    return std::pow(x, p + 1.0) / (p + 1.0) * gauss_2f1(-q, p + 1.0, p + 2.0, x);
}

double kernel_flux_left(double alpha, double r, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("kernel_flux_left: x must lie in (0, 1)");
    const auto [p, q] = kernel_exponents(alpha, r);
    // D [ G(p+1)/G(3-a+p) x^{2-a+p} 2F1(-q, p+1; 3-a+p; x) ]
    //   = G(p+1)/G(2-a+p) x^{1-a+p} 2F1(-q, p+1; 2-a+p; x)
    const double c = 2.0 - alpha + p;
    const double pref = std::exp(specfun::log_gamma(p + 1.0) - specfun::log_gamma(c));
    return pref * std::pow(x, c - 1.0) * gauss_2f1(-q, p + 1.0, c, x);
}

double kernel_flux_right(double alpha, double r, double x) {
    if (!(x > 0.0 && x < 1.0)) throw DomainError("kernel_flux_right: x must lie in (0, 1)");
    const auto [p, q] = kernel_exponents(alpha, r);
    const double c = 2.0 - alpha + q;
    const double pref = std::exp(specfun::log_gamma(q + 1.0) - specfun::log_gamma(c));
    return -pref * std::pow(1.0 - x, c - 1.0) * gauss_2f1(-p, q + 1.0, c, 1.0 - x);
}

double kernel_annihilation_residual(double alpha, double r, double x) {
    return r * kernel_flux_left(alpha, r, x) + (1.0 - r) * kernel_flux_right(alpha, r, x);
}

ShiftCoefficients nonhomogeneous_shift(double alpha, double r, double A, double B) {
    const double K1 = kernel_K(alpha, r, 1.0);  // nonzero: K strictly increasing
    return {A, (B - A) / K1};
}

}  // namespace fracspectral::kernelspace
