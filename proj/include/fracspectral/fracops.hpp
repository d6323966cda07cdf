#pragma once

#include <Eigen/Dense>
#include <cmath>

#include "fracspectral/errors.hpp"

namespace fracspectral::fracops {

enum class Side { left, right };

// Problem parameters for L_r^alpha = -(r D D^{-(2-alpha)} D + (1-r) D D^{-(2-alpha)*} D).
// beta is derived from (alpha, r) through r = sin(pi b) / (sin(pi(a-b)) + sin(pi b));
// the kernel exponents are p = beta - 1, q = alpha - beta - 1.
// r is restricted to [0.01, 0.99]: the sin(pi alpha)/sin(pi(alpha-beta)) prefactor
// degenerates as r -> 1.
struct FractionalParams {
    double alpha;
    double r;
    double beta;

    FractionalParams(double alpha_, double r_);

    double kernel_p() const { return beta - 1.0; }
    double kernel_q() const { return alpha - beta - 1.0; }
};

// Polynomial in the monomial basis, ascending degree.
struct Polynomial {
    Eigen::VectorXd coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    double eval(double x) const {
        double s = 0.0;
        for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) s = s * x + coeffs[j];
        return s;
    }
};

// omega-form x^{beta_exp} (1-x)^{gamma_exp} * sum_j coeffs_j x^j.
struct WeightedPolynomial {
    double beta_exp;
    double gamma_exp;
    Eigen::VectorXd coeffs;

    WeightedPolynomial(double be, double ge, Eigen::VectorXd c)
        : beta_exp(be), gamma_exp(ge), coeffs(std::move(c)) {
        if (!(beta_exp > -1.0) || !(gamma_exp > -1.0))
            throw DomainError("WeightedPolynomial: exponents must exceed -1");
    }

    double eval(double x) const {
        double poly = 0.0;
        for (Eigen::Index j = coeffs.size() - 1; j >= 0; --j) poly = poly * x + coeffs[j];
        return std::pow(x, beta_exp) * std::pow(1.0 - x, gamma_exp) * poly;
    }
};

// Fractional integral of a pure power:
//   left:  D^{-sigma} x^g          = G(g+1)/G(g+1+sigma) x^{g+sigma}
//   right: D^{-sigma*} (1-x)^g     = G(g+1)/G(g+1+sigma) (1-x)^{g+sigma}
double frac_integral_power(double sigma, double gamma_exp, double x, Side side);

// D^{-(2-alpha)} [x^p (1-x)^q] (left) or its right mirror, via the 2F1 closed
// forms. Requires the interchange provisos: on the left branch p > -1, q < 0,
// and 3 - alpha + p > -q.
double frac_integral_beta_kernel(double alpha, double p, double q, double x, Side side);

// Exact polynomial action of L_r^alpha on the weighted monomial
// x^beta (1-x)^{alpha-beta} x^n:
//   L_r^alpha [omega x^n] = sum_{j=0}^{n} a_{n,j} x^j,
//   a_{n,j} = (-1)^{n+1} (1-r) sin(pi a)/sin(pi(a-b)) G(1+a-b)
//             * (-1)^j G(1+a+j) / (G(1+a-b-n+j) G(1+n-j) G(j+1)).
// Gamma poles in the denominator contribute zero through the reciprocal-gamma
// convention. All ratios evaluated in log space with sign tracking.
Polynomial apply_L_to_weighted_monomial(const FractionalParams& params, int n);

// Linear extension: L_r^alpha [omega sum_n c_n x^n].
Polynomial apply_L_to_weighted_polynomial(const FractionalParams& params, const Polynomial& poly);

}  // namespace fracspectral::fracops
