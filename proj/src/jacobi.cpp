#include "fracspectral/jacobi.hpp"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <vector>

#include "fracspectral/specfun.hpp"

namespace fracspectral::jacobi {

using specfun::log_gamma;

Eigen::VectorXd g_coefficients(const JacobiFamily& family, int n) {
    if (n < 0) throw DomainError("g_coefficients: n must be non-negative");
    if (n > 200) throw DomainError("g_coefficients: degree cap is 200");
    Eigen::VectorXd g(n + 1);
    if (n == 0) {
        g[0] = 1.0;
        return g;
    }
    const double p = family.p, q = family.q;
    // g_{n,j} = (-1)^{n-j} G(q+n) G(n+1) G(p+n+j) / (G(p+2n) G(j+1) G(n-j+1) G(q+j));
    // all Gamma arguments are positive for n >= 1.
    const double base = log_gamma(q + n) - log_gamma(p + 2.0 * n) + log_gamma(n + 1.0);
    for (int j = 0; j <= n; ++j) {
        const double lg = base + log_gamma(p + n + j) - log_gamma(j + 1.0) -
                          log_gamma(n - j + 1.0) - log_gamma(q + j);
        if (lg > 690.0) throw AccuracyError("g_coefficients: coefficient overflow (> 1e300)");
        g[j] = ((n - j) % 2 == 0 ? 1.0 : -1.0) * std::exp(lg);
    }
    g[n] = 1.0;  // exact by cancellation of the Gamma ratios
    return g;
}

namespace {

// P_0..P_N^{(A,B)}(t) by the standard three-term recurrence.
void eval_P_all(double A, double B, int N, double t, Eigen::VectorXd& out) {
    out.resize(N + 1);
    out[0] = 1.0;
    if (N == 0) return;
    out[1] = (A + 1.0) + (A + B + 2.0) * (t - 1.0) / 2.0;
    for (int m = 2; m <= N; ++m) {
        const double c1 = 2.0 * m * (m + A + B) * (2.0 * m + A + B - 2.0);
        const double c2 = (2.0 * m + A + B - 1.0) * (A * A - B * B);
        const double c3 = (2.0 * m + A + B - 1.0) * (2.0 * m + A + B) * (2.0 * m + A + B - 2.0);
        const double c4 = 2.0 * (m + A - 1.0) * (m + B - 1.0) * (2.0 * m + A + B);
        out[m] = ((c2 + c3 * t) * out[m - 1] - c4 * out[m - 2]) / c1;
    }
}

// Monic rescale: G_n = Gamma(n+1) Gamma(n+p) / Gamma(2n+p) * P_n^{(p-q,q-1)}(2x-1).
double monic_scale(double p, int n) {
    if (n == 0) return 1.0;
    return std::exp(log_gamma(n + 1.0) + log_gamma(n + p) - log_gamma(2.0 * n + p));
}

}  // namespace

double eval_G(const JacobiFamily& family, int n, double x) {
    if (n < 0) throw DomainError("eval_G: n must be non-negative");
    Eigen::VectorXd P;
    eval_P_all(family.p - family.q, family.q - 1.0, n, 2.0 * x - 1.0, P);
    return monic_scale(family.p, n) * P[n];
}

Eigen::VectorXd eval_G_all(const JacobiFamily& family, int N, double x) {
    if (N < 0) throw DomainError("eval_G_all: N must be non-negative");
    Eigen::VectorXd P;
    eval_P_all(family.p - family.q, family.q - 1.0, N, 2.0 * x - 1.0, P);
    for (int m = 1; m <= N; ++m) P[m] *= monic_scale(family.p, m);
    return P;
}

double norm_G_squared(const JacobiFamily& family, int n) {
    if (n < 0) throw DomainError("norm_G_squared: n must be non-negative");
    const double p = family.p, q = family.q;
    if (n == 0) return specfun::beta(q, p - q + 1.0);
    return std::exp(log_gamma(n + 1.0) + log_gamma(n + q) + log_gamma(n + p) +
                    log_gamma(n + p - q + 1.0) - std::log(2.0 * n + p) -
                    2.0 * log_gamma(2.0 * n + p));
}

QuadratureRule gauss_jacobi_rule(double a_exp, double b_exp, int M) {
    if (M <= 0) throw DomainError("gauss_jacobi_rule: M must be positive");
    if (!(a_exp > -1.0) || !(b_exp > -1.0))
        throw DomainError("gauss_jacobi_rule: weight exponents must exceed -1");

    // Jacobi matrix for the weight (1-t)^A (1+t)^B on (-1,1), A = b_exp, B = a_exp.
    const double A = b_exp, B = a_exp;
    Eigen::VectorXd diag(M), sub(M > 1 ? M - 1 : 0);
    diag[0] = (B - A) / (A + B + 2.0);
    for (int k = 1; k < M; ++k) {
        const double s = 2.0 * k + A + B;
        diag[k] = (B * B - A * A) / (s * (s + 2.0));
        double bk;
        if (k == 1) {
            // (1 + A + B) cancels between numerator and 2k+A+B-1
            bk = 4.0 * (1.0 + A) * (1.0 + B) / ((2.0 + A + B) * (2.0 + A + B) * (3.0 + A + B));
        } else {
            bk = 4.0 * k * (k + A) * (k + B) * (k + A + B) /
                 (s * s * (s + 1.0) * (s - 1.0));
        }
        sub[k - 1] = std::sqrt(bk);
    }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, sub);
    if (solver.info() != Eigen::Success)
        throw NumericError("gauss_jacobi_rule: tridiagonal eigen-solver failed");

    QuadratureRule rule;
    rule.a_exp = a_exp;
    rule.b_exp = b_exp;
    rule.nodes = (solver.eigenvalues().array() + 1.0) / 2.0;
    const double mu0 = specfun::beta(a_exp + 1.0, b_exp + 1.0);
    rule.weights = mu0 * solver.eigenvectors().row(0).array().square();
    return rule;
}

double integrate_graded(const std::function<double(double)>& f, double a, double b,
                        const QuadratureRule& panel_rule, int levels_left, int levels_right) {
    // Panel layout in unit coordinates: dyadic refinement of (0, mid] toward 0
    // and of [mid, 1) toward 1, with mid splitting the two graded fans.
    std::vector<std::pair<double, double>> panels;
    const double mid = (levels_left > 0 && levels_right > 0) ? 0.5
                       : (levels_left > 0 ? 1.0 : (levels_right > 0 ? 0.0 : 1.0));
    if (levels_left > 0) {
        panels.emplace_back(0.0, mid * std::pow(0.5, levels_left));
        for (int k = levels_left - 1; k >= 0; --k)
            panels.emplace_back(mid * std::pow(0.5, k + 1), mid * std::pow(0.5, k));
    }
    if (levels_right > 0) {
        for (int k = 0; k < levels_right; ++k)
            panels.emplace_back(1.0 - (1.0 - mid) * std::pow(0.5, k),
                                1.0 - (1.0 - mid) * std::pow(0.5, k + 1));
        panels.emplace_back(1.0 - (1.0 - mid) * std::pow(0.5, levels_right), 1.0);
    }
    if (panels.empty()) panels.emplace_back(0.0, 1.0);

    const double len = b - a;
    double total = 0.0;
    for (const auto& [ta, tb] : panels) {
        const double pa = a + len * ta;
        const double plen = len * (tb - ta);
        if (plen <= 0.0) continue;
        double s = 0.0;
        for (Eigen::Index k = 0; k < panel_rule.nodes.size(); ++k)
            s += panel_rule.weights[k] * f(pa + plen * panel_rule.nodes[k]);
        total += plen * s;
    }
    return total;
}

}  // namespace fracspectral::jacobi
