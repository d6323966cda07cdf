#pragma once

#include <Eigen/Dense>
#include <functional>
#include <optional>
#include <vector>

#include "fracspectral/fracops.hpp"
#include "fracspectral/jacobi.hpp"

namespace fracspectral::spectral {

// Right-hand side f = sum_t x^{a_t} (1-x)^{b_t} g_t(x), with the endpoint
// powers declared so the projection can absorb them into the quadrature
// weight. Smooth f is the single-term case a = b = 0.
struct RhsTerm {
    double x_exp = 0.0;
    double one_minus_x_exp = 0.0;
    std::function<double(double)> factor;  // the smooth part g_t
};

struct RhsFunction {
    std::vector<RhsTerm> terms;

    double operator()(double x) const;

    static RhsFunction smooth(std::function<double(double)> f);
    static RhsFunction constant(double c);
    // One term per weighted polynomial c * x^a (1-x)^b * poly(x).
    static RhsFunction power_sum(const std::vector<fracops::WeightedPolynomial>& parts);
};

// Trial/test pair for L_r^alpha u = f:
//   trial family  G_n(alpha+1, beta+1) against omega  = x^beta (1-x)^{alpha-beta},
//   test family   G_n(alpha+1, alpha-beta+1) against omega* = x^{alpha-beta} (1-x)^beta.
struct SpectralProblem {
    fracops::FractionalParams params;

    explicit SpectralProblem(fracops::FractionalParams p) : params(p) {}

    jacobi::JacobiFamily trial_family() const {
        return {params.alpha + 1.0, params.beta + 1.0};
    }
    jacobi::JacobiFamily test_family() const {
        return {params.alpha + 1.0, params.alpha - params.beta + 1.0};
    }
    double omega(double x) const {
        return std::pow(x, params.beta) * std::pow(1.0 - x, params.alpha - params.beta);
    }
    double omega_star(double x) const {
        return std::pow(x, params.alpha - params.beta) * std::pow(1.0 - x, params.beta);
    }
};

// Pseudo-eigenvalue lambda_n = -(1-r) sin(pi a)/sin(pi(a-b)) G(n+1+a)/G(n+1).
// The adjoint problem L_{1-r} has trial weight omega*, and its eigenvalue
// evaluates with sin(pi b) in the denominator; by the defining relation
// r sin(pi(a-b)) = (1-r) sin(pi b) the two values coincide.
double lambda(const fracops::FractionalParams& params, int n, bool adjoint = false);

// Projections f*_i = int omega* f G_i* dx for i = 0..N, by Gauss-Jacobi rules
// with each term's declared endpoint powers absorbed into the weight.
// Primary rule M = N + 20 is cross-checked against M' = ceil(1.5 M);
// relative disagreement above 1e-8 raises AccuracyError. Rules, polynomial
// values and accumulation run internally in extended precision: monic G_n
// shrink like 4^{-n}, and near-zero projections at n ~ 20 sit below the
// double-precision noise floor.
Eigen::VectorXd project_rhs(const SpectralProblem& problem, const RhsFunction& f, int N);

struct SpectralSolution {
    int N;
    Eigen::VectorXd coeffs;   // c_0..N
    Eigen::VectorXd lambdas;  // lambda_0..N
    Eigen::VectorXd norms;    // ||G_i*||^2_{omega*} = ||G_i||^2_omega
    SpectralProblem problem;
};

// u_N = omega sum_i c_i G_i with c_i = f*_i / (lambda_i ||G_i*||^2).
// N <= 150, the safe range of the log-gamma ratio evaluations.
SpectralSolution solve(const SpectralProblem& problem, const RhsFunction& f, int N);

// omega(x) sum c_j G_j(x); exactly zero at x = 0 and x = 1.
double eval_solution(const SpectralSolution& sol, double x);

enum class ErrorNorm { l2, l2_omega, l2_omega_inv };

// Reference solution for error measurement. When `weighted_coeffs` is set the
// exact solution shares the trial weight, u = omega sum ctilde_j G_j, and the
// omega^{-1} error reduces to coefficient algebra.
struct ExactSolution {
    std::function<double(double)> eval;
    std::optional<Eigen::VectorXd> weighted_coeffs;
};

// Weighted error norms by graded composite quadrature (ratio 1/2 toward both
// endpoints); two quadrature refinements disagreeing by more than 1e-6
// relative raise AccuracyError.
double weighted_error(const SpectralProblem& problem, const SpectralSolution& sol,
                      const ExactSolution& u_exact, ErrorNorm which);

}  // namespace fracspectral::spectral
