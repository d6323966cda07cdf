#include "fracspectral/spectral.hpp"

#include <cmath>

#include "fracspectral/specfun.hpp"
#include "quadfloat.hpp"

namespace fracspectral::detail {

QuadRule refine_rule(double a_exp, double b_exp, int M) {
    const jacobi::QuadratureRule seed = jacobi::gauss_jacobi_rule(a_exp, b_exp, M);
    const JacobiRecurrence rec{static_cast<qfloat>(b_exp), static_cast<qfloat>(a_exp)};

    QuadRule rule;
    rule.nodes.resize(M);
    rule.weights.resize(M);
    const qfloat mu0 = static_cast<qfloat>(specfun::beta(a_exp + 1.0, b_exp + 1.0));
    std::vector<qfloat> P, dP;
    for (int k = 0; k < M; ++k) {
        qfloat t = 2 * static_cast<qfloat>(seed.nodes[k]) - 1;
        for (int it = 0; it < 3; ++it) {
            ortho_eval(rec, M, t, P, dP);
            t -= P[M] / dP[M];
        }
        ortho_eval(rec, M, t, P, dP);
        qfloat chr = 0;
        for (int i = 0; i < M; ++i) chr += P[i] * P[i];
        rule.nodes[k] = (t + 1) / 2;
        rule.weights[k] = mu0 / chr;
    }
    return rule;
}

std::vector<double> monic_scales(double p, int N) {
    std::vector<double> s(N + 1, 1.0);
    for (int m = 1; m <= N; ++m)
        s[m] = std::exp(specfun::log_gamma(m + 1.0) + specfun::log_gamma(m + p) -
                        specfun::log_gamma(2.0 * m + p));
    return s;
}

void eval_G_all_q(double p, double q, int N, qfloat x, const std::vector<double>& scales,
                  std::vector<qfloat>& out) {
    const qfloat A = static_cast<qfloat>(p - q), B = static_cast<qfloat>(q - 1.0);
    const qfloat t = 2 * x - 1;
    out.resize(N + 1);
    out[0] = 1;
    if (N >= 1) out[1] = (A + 1) + (A + B + 2) * (t - 1) / 2;
    for (int m = 2; m <= N; ++m) {
        const qfloat c1 = 2 * qfloat(m) * (m + A + B) * (2 * m + A + B - 2);
        const qfloat c2 = (2 * m + A + B - 1) * (A * A - B * B);
        const qfloat c3 = (2 * m + A + B - 1) * (2 * m + A + B) * (2 * m + A + B - 2);
        const qfloat c4 = 2 * (m + A - 1) * (m + B - 1) * (2 * m + A + B);
        out[m] = ((c2 + c3 * t) * out[m - 1] - c4 * out[m - 2]) / c1;
    }
    for (int m = 1; m <= N; ++m) out[m] *= static_cast<qfloat>(scales[m]);
}

}  // namespace fracspectral::detail

namespace fracspectral::spectral {

using specfun::log_gamma;
using specfun::sin_pi;

double RhsFunction::operator()(double x) const {
    double s = 0.0;
    for (const auto& t : terms)
        s += std::pow(x, t.x_exp) * std::pow(1.0 - x, t.one_minus_x_exp) * t.factor(x);
    return s;
}

RhsFunction RhsFunction::smooth(std::function<double(double)> f) {
    return {{RhsTerm{0.0, 0.0, std::move(f)}}};
}

RhsFunction RhsFunction::constant(double c) {
    return smooth([c](double) { return c; });
}

RhsFunction RhsFunction::power_sum(const std::vector<fracops::WeightedPolynomial>& parts) {
    RhsFunction f;
    for (const auto& wp : parts) {
        fracops::Polynomial poly{wp.coeffs};
        f.terms.push_back(
            {wp.beta_exp, wp.gamma_exp, [poly](double x) { return poly.eval(x); }});
    }
    return f;
}

double lambda(const fracops::FractionalParams& params, int n, bool adjoint) {
    if (n < 0) throw DomainError("lambda: n must be non-negative");
    const double a = params.alpha, b = params.beta;
    const double ratio = std::exp(log_gamma(n + 1.0 + a) - log_gamma(n + 1.0));
    if (adjoint) return -params.r * sin_pi(a) / sin_pi(b) * ratio;
    return -(1.0 - params.r) * sin_pi(a) / sin_pi(a - b) * ratio;
}

namespace {

// f*_i for i = 0..N with an M-point quad-refined rule per term.
Eigen::VectorXd project_with_rule_size(const SpectralProblem& problem, const RhsFunction& f,
                                       int N, int M) {
    using detail::qfloat;
    const double a = problem.params.alpha, b = problem.params.beta;
    const jacobi::JacobiFamily test = problem.test_family();
    const std::vector<double> scales = detail::monic_scales(test.p, N);

    std::vector<qfloat> acc(N + 1, 0);
    std::vector<qfloat> G;
    for (const auto& term : f.terms) {
        const double ae = (a - b) + term.x_exp;
        const double be = b + term.one_minus_x_exp;
        if (!(ae > -1.0) || !(be > -1.0))
            throw DomainError("project_rhs: term exponents leave the integrable range");
        const detail::QuadRule rule = detail::refine_rule(ae, be, M);
        for (int k = 0; k < M; ++k) {
            const qfloat g = static_cast<qfloat>(term.factor(static_cast<double>(rule.nodes[k])));
            detail::eval_G_all_q(test.p, test.q, N, rule.nodes[k], scales, G);
            const qfloat wg = rule.weights[k] * g;
            for (int i = 0; i <= N; ++i) acc[i] += wg * G[i];
        }
    }
    Eigen::VectorXd out(N + 1);
    for (int i = 0; i <= N; ++i) out[i] = static_cast<double>(acc[i]);
    return out;
}

}  // namespace

Eigen::VectorXd project_rhs(const SpectralProblem& problem, const RhsFunction& f, int N) {
    if (N < 0) throw DomainError("project_rhs: N must be non-negative");
    const int M = N + 20;
    const int M2 = (3 * M + 1) / 2;
    const Eigen::VectorXd fa = project_with_rule_size(problem, f, N, M);
    const Eigen::VectorXd fb = project_with_rule_size(problem, f, N, M2);
    const double scale = std::max(fb.cwiseAbs().maxCoeff(), 1e-300);
    if ((fa - fb).cwiseAbs().maxCoeff() > 1e-8 * scale)
        throw AccuracyError("project_rhs: quadrature rules of size M and 1.5M disagree");
    return fb;
}

SpectralSolution solve(const SpectralProblem& problem, const RhsFunction& f, int N) {
    if (N < 0 || N > 150) throw DomainError("solve: N must lie in [0, 150]");
    const Eigen::VectorXd fstar = project_rhs(problem, f, N);
    const jacobi::JacobiFamily test = problem.test_family();
    SpectralSolution sol{N, Eigen::VectorXd(N + 1), Eigen::VectorXd(N + 1),
                         Eigen::VectorXd(N + 1), problem};
    for (int i = 0; i <= N; ++i) {
        sol.lambdas[i] = lambda(problem.params, i);
        sol.norms[i] = jacobi::norm_G_squared(test, i);
        sol.coeffs[i] = fstar[i] / (sol.lambdas[i] * sol.norms[i]);
    }
    return sol;
}

double eval_solution(const SpectralSolution& sol, double x) {
    if (!(x >= 0.0 && x <= 1.0)) throw DomainError("eval_solution: x must lie in [0, 1]");
    if (x == 0.0 || x == 1.0) return 0.0;
    const Eigen::VectorXd G = jacobi::eval_G_all(sol.problem.trial_family(), sol.N, x);
    return sol.problem.omega(x) * sol.coeffs.dot(G);
}

namespace {

double quadrature_norm(const SpectralProblem& problem, const SpectralSolution& sol,
                       const ExactSolution& u_exact, ErrorNorm which, int pts, int levels) {
    const jacobi::QuadratureRule panel = jacobi::gauss_legendre_rule(pts);
    const auto integrand = [&](double x) {
        // rounding at the innermost graded panels can land on an endpoint,
        // where every admissible integrand has limit zero
        if (x <= 0.0 || x >= 1.0) return 0.0;
        const double d = u_exact.eval(x) - eval_solution(sol, x);
        double w = 1.0;
        if (which == ErrorNorm::l2_omega) w = problem.omega(x);
        if (which == ErrorNorm::l2_omega_inv) w = 1.0 / problem.omega(x);
        return w * d * d;
    };
    return jacobi::integrate_graded(integrand, 0.0, 1.0, panel, levels, levels);
}

}  // namespace

double weighted_error(const SpectralProblem& problem, const SpectralSolution& sol,
                      const ExactSolution& u_exact, ErrorNorm which) {
    if (which == ErrorNorm::l2_omega_inv && u_exact.weighted_coeffs) {
        // u - u_N = omega (ctilde - c) in the trial basis; orthogonality gives
        // ||u - u_N||^2_{omega^{-1}} = sum_j (ctilde_j - c_j)^2 ||G_j||^2_omega.
        const Eigen::VectorXd& ct = *u_exact.weighted_coeffs;
        const Eigen::Index n = std::max(ct.size(), sol.coeffs.size());
        const jacobi::JacobiFamily trial = problem.trial_family();
        double s = 0.0;
        for (Eigen::Index j = 0; j < n; ++j) {
            const double cj = j < ct.size() ? ct[j] : 0.0;
            const double dj = j < sol.coeffs.size() ? sol.coeffs[j] : 0.0;
            s += (cj - dj) * (cj - dj) * jacobi::norm_G_squared(trial, static_cast<int>(j));
        }
        return std::sqrt(s);
    }
    const double primary = quadrature_norm(problem, sol, u_exact, which, 32, 40);
    const double check = quadrature_norm(problem, sol, u_exact, which, 40, 46);
    // absolute slack 1e-28 on the squared norm: both runs integrating pure
    // roundoff (u_N reproducing u to machine precision) must count as agreement
    if (std::abs(primary - check) > 1e-6 * std::abs(check) + 1e-28)
        throw AccuracyError("weighted_error: graded quadrature refinements disagree");
    return std::sqrt(check);
}

}  // namespace fracspectral::spectral
