#pragma once

// Internal quad-precision Gauss-Jacobi machinery for the spectral projections.
// Monic-normalized Jacobi coefficients shrink like 4^{-n}, so recovering
// near-zero projections f*_i at n ~ 20 needs the rule and the polynomial
// values accurate well beyond double; __float128 arithmetic suffices.
// Recurrence coefficients are rational in the weight exponents, so everything
// here is plain arithmetic plus one Newton-corrected square root.

#include <Eigen/Dense>
#include <vector>

namespace fracspectral::detail {

using qfloat = __float128;

inline qfloat qsqrt(qfloat x) {
    qfloat s = static_cast<qfloat>(std::sqrt(static_cast<double>(x)));
    if (s == 0) return 0;
    s = (s + x / s) / 2;
    s = (s + x / s) / 2;
    return s;
}

// Three-term recurrence coefficients of the monic Jacobi polynomials for the
// weight (1-t)^A (1+t)^B on (-1, 1).
struct JacobiRecurrence {
    qfloat A, B;

    qfloat alpha(int k) const {
        if (k == 0) return (B - A) / (A + B + 2);
        const qfloat s = 2 * k + A + B;
        return (B * B - A * A) / (s * (s + 2));
    }
    qfloat beta(int k) const {  // k >= 1
        if (k == 1) return 4 * (1 + A) * (1 + B) / ((2 + A + B) * (2 + A + B) * (3 + A + B));
        const qfloat s = 2 * k + A + B;
        return 4 * qfloat(k) * (k + A) * (k + B) * (k + A + B) / (s * s * (s + 1) * (s - 1));
    }
};

// Unnormalized orthogonal polynomials P^_0..P^_M (P^_0 = 1) and derivatives at t.
inline void ortho_eval(const JacobiRecurrence& rec, int M, qfloat t,
                       std::vector<qfloat>& P, std::vector<qfloat>& dP) {
    P.resize(M + 1);
    dP.resize(M + 1);
    P[0] = 1;
    dP[0] = 0;
    if (M == 0) return;
    std::vector<qfloat> sq(M + 1);
    for (int k = 1; k <= M; ++k) sq[k] = qsqrt(rec.beta(k));
    P[1] = (t - rec.alpha(0)) / sq[1];
    dP[1] = 1 / sq[1];
    for (int k = 1; k < M; ++k) {
        P[k + 1] = ((t - rec.alpha(k)) * P[k] - sq[k] * P[k - 1]) / sq[k + 1];
        dP[k + 1] = ((t - rec.alpha(k)) * dP[k] + P[k] - sq[k] * dP[k - 1]) / sq[k + 1];
    }
}

// Quad-refined Gauss-Jacobi rule on (0, 1) for the weight x^{a_exp} (1-x)^{b_exp}.
// Nodes start from the double-precision Golub-Welsch values and take Newton
// steps on the M-th orthogonal polynomial; weights come from the Christoffel
// identity w_k = mu0 / sum_i P^_i(t_k)^2.
struct QuadRule {
    std::vector<qfloat> nodes;    // on (0, 1)
    std::vector<qfloat> weights;
};

QuadRule refine_rule(double a_exp, double b_exp, int M);

// G_0..G_N(p, q, x) in quad precision (monic scale factors passed in double;
// they are uniform per degree and cancel from orthogonality).
void eval_G_all_q(double p, double q, int N, qfloat x, const std::vector<double>& monic_scales,
                  std::vector<qfloat>& out);

std::vector<double> monic_scales(double p, int N);

}  // namespace fracspectral::detail
