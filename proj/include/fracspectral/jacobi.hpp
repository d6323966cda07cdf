#pragma once

#include <Eigen/Dense>
#include <functional>

#include "fracspectral/errors.hpp"

namespace fracspectral::jacobi {

// Jacobi family G_n(p, q, x) on (0, 1), orthogonal against x^{q-1} (1-x)^{p-q},
// normalized so the leading coefficient of G_n is 1.
struct JacobiFamily {
    double p;
    double q;

    JacobiFamily(double p_, double q_) : p(p_), q(q_) {
        if (!(q > 0.0) || !(p - q > -1.0))
            throw DomainError("JacobiFamily: requires q > 0 and p - q > -1");
    }
};

// Monomial coefficients g_{n,0..n} of G_n; g_{n,n} = 1. Computed in log space.
// The alternating sum loses digits beyond n ~ 15 when evaluated pointwise, so
// this is a low-degree oracle and coefficient-algebra aid; evaluation goes
// through the three-term recurrence.
Eigen::VectorXd g_coefficients(const JacobiFamily& family, int n);

// G_n(p, q, x) via the P_n^{(p-q, q-1)}(2x - 1) recurrence, rescaled to monic.
double eval_G(const JacobiFamily& family, int n, double x);

// Values G_0(x), ..., G_N(x) in one recurrence sweep.
Eigen::VectorXd eval_G_all(const JacobiFamily& family, int N, double x);

// ||G_n||^2 against the family weight:
//   Gamma(n+1) Gamma(n+q) Gamma(n+p) Gamma(n+p-q+1) / ((2n+p) Gamma^2(2n+p))
double norm_G_squared(const JacobiFamily& family, int n);

// M-point Gauss rule on (0, 1) for the weight x^{a_exp} (1-x)^{b_exp},
// exact for polynomial factors of degree <= 2M - 1.
struct QuadratureRule {
    Eigen::VectorXd nodes;    // strictly increasing, inside (0, 1)
    Eigen::VectorXd weights;  // positive, summing to B(a_exp+1, b_exp+1)
    double a_exp = 0.0;
    double b_exp = 0.0;

    double integrate(const std::function<double(double)>& f) const {
        double s = 0.0;
        for (Eigen::Index k = 0; k < nodes.size(); ++k) s += weights[k] * f(nodes[k]);
        return s;
    }
};

// Golub-Welsch construction (symmetric tridiagonal eigen-decomposition).
QuadratureRule gauss_jacobi_rule(double a_exp, double b_exp, int M);

inline QuadratureRule gauss_legendre_rule(int M) { return gauss_jacobi_rule(0.0, 0.0, M); }

// Composite Gauss-Legendre on [a, b] with dyadic grading (ratio 1/2) toward
// either endpoint; `levels == 0` means a single panel on that side.
double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        const QuadratureRule& panel_rule, int levels_left, int levels_right);

}  // namespace fracspectral::jacobi
