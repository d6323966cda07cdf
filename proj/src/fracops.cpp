#include "fracspectral/fracops.hpp"

#include <cmath>

#include "fracspectral/kernelspace.hpp"
#include "fracspectral/specfun.hpp"

namespace fracspectral::fracops {

using specfun::gauss_2f1;
using specfun::log_gamma;
using specfun::signed_log_gamma;

FractionalParams::FractionalParams(double alpha_, double r_) : alpha(alpha_), r(r_) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("FractionalParams: alpha in (1, 2)");
    if (!(r >= 0.01 && r <= 0.99)) throw DomainError("FractionalParams: r in [0.01, 0.99]");
    beta = kernelspace::beta_from_r(alpha, r);
}

double frac_integral_power(double sigma, double gamma_exp, double x, Side side) {
    if (!(sigma > 0.0)) throw DomainError("frac_integral_power: sigma must be positive");
    if (!(gamma_exp > -1.0)) throw DomainError("frac_integral_power: exponent must exceed -1");
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("frac_integral_power: x must lie in [0, 1]");
    const double ratio = std::exp(log_gamma(gamma_exp + 1.0) - log_gamma(gamma_exp + 1.0 + sigma));
    const double base = side == Side::left ? x : 1.0 - x;
    return ratio * std::pow(base, gamma_exp + sigma);
}

double frac_integral_beta_kernel(double alpha, double p, double q, double x, Side side) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("frac_integral_beta_kernel: alpha in (1, 2)");
    if (!(x > 0.0 && x < 1.0)) throw DomainError("frac_integral_beta_kernel: x in (0, 1)");
    if (side == Side::right) {
        // mirror symmetry: D^{-s*}[x^p (1-x)^q](x) = D^{-s}[x^q (1-x)^p](1-x)
        return frac_integral_beta_kernel(alpha, q, p, 1.0 - x, Side::left);
    }
    // provisos of the proof chain on the left branch
    if (!(p > -1.0) || !(q < 0.0) || !(3.0 - alpha + p + q > 0.0))
        throw DomainError("frac_integral_beta_kernel: provisos violated (need p > -1, -q in (0, 3-alpha+p))");
    const double c = 3.0 - alpha + p;
    const double pref = std::exp(log_gamma(p + 1.0) - log_gamma(c));
    return pref * std::pow(x, 2.0 - alpha + p) * gauss_2f1(-q, p + 1.0, c, x);
}

Polynomial apply_L_to_weighted_monomial(const FractionalParams& params, int n) {
    if (n < 0) throw DomainError("apply_L_to_weighted_monomial: n must be non-negative");
    if (n > 150) throw DomainError("apply_L_to_weighted_monomial: degree cap is 150");
    const double a = params.alpha, b = params.beta;
    const double pref_mag = (1.0 - params.r) *
                            std::abs(specfun::sin_pi(a) / specfun::sin_pi(a - b)) *
                            std::exp(log_gamma(1.0 + a - b));
    // sin(pi a) < 0 on (1,2) and sin(pi(a-b)) > 0, so the ratio contributes -1
    const int pref_sign = ((n + 1) % 2 == 0 ? 1 : -1) * (-1);

    Polynomial out;
    out.coeffs = Eigen::VectorXd::Zero(n + 1);
    for (int j = 0; j <= n; ++j) {
        const double denom_arg = 1.0 + a - b - n + j;
        // a - b is non-integer for admissible parameters, so no true pole; the
        // reciprocal-gamma convention would zero the term otherwise.
        if (specfun::is_nonpositive_integer(denom_arg)) continue;
        const auto d = signed_log_gamma(denom_arg);
        const double lg = log_gamma(1.0 + a + j) - d.log_abs - log_gamma(1.0 + n - j) -
                          log_gamma(j + 1.0);
        const int sign = pref_sign * (j % 2 == 0 ? 1 : -1) * d.sign;
        out.coeffs[j] = sign * pref_mag * std::exp(lg);
    }
    return out;
}

Polynomial apply_L_to_weighted_polynomial(const FractionalParams& params, const Polynomial& poly) {
    const int deg = poly.degree();
    if (deg > 150) throw DomainError("apply_L_to_weighted_polynomial: degree cap is 150");
    Polynomial out;
    out.coeffs = Eigen::VectorXd::Zero(deg + 1);
    for (int m = 0; m <= deg; ++m) {
        if (poly.coeffs[m] == 0.0) continue;
        const Polynomial row = apply_L_to_weighted_monomial(params, m);
        out.coeffs.head(m + 1) += poly.coeffs[m] * row.coeffs;
    }
    return out;
}

}  // namespace fracspectral::fracops
