#include "fracspectral/fem.hpp"

#include <Eigen/LU>
#include <cmath>
#include <limits>

#include "fracspectral/jacobi.hpp"
#include "fracspectral/kernelspace.hpp"
#include "fracspectral/specfun.hpp"

namespace fracspectral::fem {

using specfun::gauss_2f1;
using specfun::log_gamma;
using specfun::sin_pi;

double FemSystem::eval(double x) const {
    const int n = mesh.n_intervals;
    const double h = mesh.h();
    if (x <= 0.0 || x >= 1.0) return 0.0;
    int e = std::min(static_cast<int>(x / h), n - 1);
    const double t = (x - e * h) / h;
    const double ul = e >= 1 ? solution[e - 1] : 0.0;
    const double ur = e + 1 <= n - 1 ? solution[e] : 0.0;
    return ul * (1.0 - t) + ur * t;
}

namespace {

struct Piece {
    double a, b, c;  // c * indicator(a, b), a piece of phi'
};

std::vector<Piece> hat_derivative_pieces(const Mesh& mesh, int j) {
    const int n = mesh.n_intervals;
    const double h = mesh.h();
    std::vector<Piece> out;
    if (j > 0) out.push_back({mesh.node(j - 1), mesh.node(j), 1.0 / h});
    if (j < n) out.push_back({mesh.node(j), mesh.node(j + 1), -1.0 / h});
    return out;
}

}  // namespace

double hat_pair_entry(double alpha, double r, const Mesh& mesh, int i, int j) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("hat_pair_entry: alpha in (1, 2)");
    const double sig = 2.0 - alpha;
    const double inv = 1.0 / std::exp(log_gamma(sig + 2.0));
    const auto G = [sig](double y) { return y > 0.0 ? std::pow(y, sig + 1.0) : 0.0; };
    // int_c^d D^{-sig} 1_(a,b) dx = [G(d-a) - G(c-a) - G(d-b) + G(c-b)] / Gamma(sig+2)
    const auto left_block = [&](const Piece& trial, const Piece& test) {
        return trial.c * test.c * inv *
               (G(test.b - trial.a) - G(test.a - trial.a) - G(test.b - trial.b) +
                G(test.a - trial.b));
    };
    double bl = 0.0, br = 0.0;
    for (const auto& pj : hat_derivative_pieces(mesh, j))
        for (const auto& pi : hat_derivative_pieces(mesh, i)) {
            bl += left_block(pj, pi);
            br += left_block(pi, pj);  // right integral by the adjoint identity
        }
    return r * bl + (1.0 - r) * br;
}

Eigen::MatrixXd assemble(double alpha, double r, const Mesh& mesh) {
    if (!(alpha > 1.0 && alpha < 2.0)) throw DomainError("assemble: alpha in (1, 2)");
    const int n = mesh.n_intervals;
    const double sig = 2.0 - alpha;
    const double h = mesh.h();

    // Toeplitz band values: entry(i, j) = scale * A(i - j) for the left term,
    // A(d) = -(fourth central difference of P)(d), P(k) = max(k, 0)^{sig+1}.
    // P is stored at index k + 3 so the d = -1 band stays in range.
    Eigen::VectorXd P(n + 5);
    for (int k = -3; k <= n + 1; ++k) P[k + 3] = k > 0 ? std::pow(double(k), sig + 1.0) : 0.0;
    Eigen::VectorXd A(2 * n - 3);  // d in [-(n-2), n-2]
    for (int d = -(n - 2); d <= n - 2; ++d) {
        if (d < -1) {
            A[d + n - 2] = 0.0;  // left integral vanishes two elements ahead
            continue;
        }
        A[d + n - 2] =
            -P[d + 5] + 4.0 * P[d + 4] - 6.0 * P[d + 3] + 4.0 * P[d + 2] - P[d + 1];
    }
    const double scale = std::pow(h, sig - 1.0) / std::exp(log_gamma(sig + 2.0));

    const int m = n - 1;
    Eigen::MatrixXd B(m, m);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
            const int d = i - j;
            B(i, j) = scale * (r * A[d + n - 2] + (1.0 - r) * A[-d + n - 2]);
        }
    return B;
}

ManufacturedCase manufactured_case(int id) {
    using fracops::WeightedPolynomial;
    const auto one = [](double c) { return (Eigen::VectorXd(1) << c).finished(); };
    switch (id) {
        case 1: {
            const double alpha = 1.4, r = 0.5;
            const double C = 1.0 / gauss_2f1(alpha / 2, 1 - alpha / 2, 1 + alpha / 2, 1.0);
            const double g2 = 1.0 / std::exp(log_gamma(2.0 - alpha));
            return {1, alpha, r,
                    [alpha, C](double x) {
                        return x - C * std::pow(x, alpha / 2) *
                                       gauss_2f1(alpha / 2, 1 - alpha / 2, 1 + alpha / 2, x);
                    },
                    {WeightedPolynomial(1.0 - alpha, 0.0, one(-0.5 * g2)),
                     WeightedPolynomial(0.0, 1.0 - alpha, one(0.5 * g2))}};
        }
        case 2: {
            const double alpha = 1.4, p = -0.15, q = alpha - p - 2.0;
            const double r = sin_pi(p) / (sin_pi(p) + sin_pi(q));
            const double C = 1.0 / gauss_2f1(-q, p + 1, p + 2, 1.0);
            const double g2 = 1.0 / std::exp(log_gamma(2.0 - alpha));
            return {2, alpha, r,
                    [p, q, C](double x) {
                        return x - C * std::pow(x, p + 1) * gauss_2f1(-q, p + 1, p + 2, x);
                    },
                    {WeightedPolynomial(1.0 - alpha, 0.0, one(-r * g2)),
                     WeightedPolynomial(0.0, 1.0 - alpha, one((1.0 - r) * g2))}};
        }
        case 3: {
            const double alpha = 1.6, r = 0.5;
            const double f0 = -std::exp(log_gamma(1.0 + alpha)) * std::cos(M_PI * alpha / 2);
            return {3, alpha, r,
                    [alpha](double x) {
                        return std::pow(x, alpha / 2) * std::pow(1.0 - x, alpha / 2);
                    },
                    {WeightedPolynomial(0.0, 0.0, one(f0))}};
        }
        case 4: {
            const double alpha = 1.6, p = 0.9, q = alpha - p;
            const double r = sin_pi(p + 1.0) / (sin_pi(p + 1.0) - sin_pi(alpha - p));
            const double f0 =
                -(1.0 - r) * std::exp(log_gamma(1.0 + alpha)) * sin_pi(alpha) / sin_pi(alpha - p);
            return {4, alpha, r,
                    [p, q](double x) { return std::pow(x, p) * std::pow(1.0 - x, q); },
                    {WeightedPolynomial(0.0, 0.0, one(f0))}};
        }
        default:
            throw DomainError("manufactured_case: id must be 1..4");
    }
}

namespace {

// <x^g, phi_i> over the hat support, antiderivatives of x^g and x^{g+1}.
double hat_against_power(double g, const Mesh& mesh, int i) {
    const double h = mesh.h();
    const double a = mesh.node(i - 1), b = mesh.node(i), c = mesh.node(i + 1);
    const auto I1 = [g](double lo, double hi) {
        return (std::pow(hi, g + 1.0) - std::pow(lo, g + 1.0)) / (g + 1.0);
    };
    const auto I2 = [g](double lo, double hi) {
        return (std::pow(hi, g + 2.0) - std::pow(lo, g + 2.0)) / (g + 2.0);
    };
    return ((I2(a, b) - a * I1(a, b)) + (c * I1(b, c) - I2(b, c))) / h;
}

// Coefficients of poly(1 - y) given those of poly(x).
Eigen::VectorXd reflect_poly(const Eigen::VectorXd& c) {
    const int deg = static_cast<int>(c.size()) - 1;
    Eigen::VectorXd out = Eigen::VectorXd::Zero(deg + 1);
    for (int j = 0; j <= deg; ++j) {
        double binom = 1.0;  // C(j, k) (-1)^k
        for (int k = 0; k <= j; ++k) {
            out[k] += c[j] * binom;
            binom *= -(double(j) - k) / (k + 1.0);
        }
    }
    return out;
}

}  // namespace

Eigen::VectorXd load_vector(const ManufacturedCase& mc, const Mesh& mesh) {
    const int n = mesh.n_intervals;
    Eigen::VectorXd F = Eigen::VectorXd::Zero(n - 1);
    for (const auto& term : mc.f_terms) {
        if (term.gamma_exp == 0.0) {
            for (int i = 1; i < n; ++i)
                for (int j = 0; j < term.coeffs.size(); ++j)
                    F[i - 1] += term.coeffs[j] * hat_against_power(term.beta_exp + j, mesh, i);
        } else if (term.beta_exp == 0.0) {
            // mirror: <(1-x)^g poly(x), phi_i> = <y^g poly(1-y), phi_{n-i}>
            const Eigen::VectorXd rc = reflect_poly(term.coeffs);
            for (int i = 1; i < n; ++i)
                for (int j = 0; j < rc.size(); ++j)
                    F[i - 1] += rc[j] * hat_against_power(term.gamma_exp + j, mesh, n - i);
        } else {
            // two-sided power: graded quadrature over the hat support
            const auto rule = jacobi::gauss_legendre_rule(16);
            for (int i = 1; i < n; ++i) {
                const auto f = [&](double x) {
                    if (x <= 0.0 || x >= 1.0) return 0.0;  // integrable limit
                    const double t = (x - mesh.node(i - 1)) / mesh.h();
                    const double hat = t <= 1.0 ? t : 2.0 - t;
                    return term.eval(x) * hat;
                };
                const int gl = i == 1 ? 40 : 0;
                const int gr = i == n - 1 ? 40 : 0;
                F[i - 1] += jacobi::integrate_graded(f, mesh.node(i - 1), mesh.node(i), rule, gl, 0) +
                            jacobi::integrate_graded(f, mesh.node(i), mesh.node(i + 1), rule, 0, gr);
            }
        }
    }
    return F;
}

FemSystem solve_fem(const ManufacturedCase& mc, const Mesh& mesh) {
    FemSystem sys{mesh, mc.alpha, mc.r, assemble(mc.alpha, mc.r, mesh),
                  load_vector(mc, mesh), Eigen::VectorXd()};
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(sys.stiffness);
    sys.solution = lu.solve(sys.load);
    const double resid = (sys.stiffness * sys.solution - sys.load).cwiseAbs().maxCoeff();
    const double scale = sys.load.cwiseAbs().maxCoeff() +
                         sys.stiffness.cwiseAbs().maxCoeff() * sys.solution.cwiseAbs().maxCoeff();
    if (!(resid <= 1e-10 * std::max(scale, 1e-300)))
        throw NumericError("solve_fem: singular or badly conditioned stiffness matrix");
    return sys;
}

namespace {

double l2_error_run(const ManufacturedCase& mc, const FemSystem& sys, int pts, int levels) {
    const int n = sys.mesh.n_intervals;
    const auto rule = jacobi::gauss_legendre_rule(pts);
    const auto sq = [&](double x) {
        const double d = mc.u_exact(x) - sys.eval(x);
        return d * d;
    };
    double total = 0.0;
    for (int e = 0; e < n; ++e) {
        const int gl = e == 0 ? levels : 0;
        const int gr = e == n - 1 ? levels : 0;
        total += jacobi::integrate_graded(sq, sys.mesh.node(e), sys.mesh.node(e + 1), rule, gl, gr);
    }
    return total;
}

}  // namespace

double l2_error(const ManufacturedCase& mc, const FemSystem& system) {
    const double primary = l2_error_run(mc, system, 16, 40);
    const double check = l2_error_run(mc, system, 24, 46);
    if (std::abs(primary - check) > 1e-4 * std::abs(check) + 1e-28)
        throw AccuracyError("l2_error: quadrature refinements disagree");
    return std::sqrt(check);
}

namespace {

// Element-pair Slobodetskii quadrature. The element list is the uniform mesh
// with the two end elements replaced by dyadically graded sub-elements, so
// every pair sees a locally smooth v away from the touching corners.
struct SlobParams {
    int gauss_distant;   // tensor Gauss order on non-touching pairs
    int gauss_near;      // order when the gap is below the element size
    int duffy;           // points per direction in the corner/diagonal transforms
    int end_levels;      // dyadic levels inside each end element
};

double slobodetskii_run(const std::function<double(double)>& v, const Mesh& mesh, double s,
                        const SlobParams& prm) {
    const int n = mesh.n_intervals;
    const double h = mesh.h();

    // Shared endpoints must be bit-identical doubles so touching pairs are
    // recognized; every boundary is built from the same node expressions.
    std::vector<double> bounds;
    bounds.reserve(n + 2 * prm.end_levels + 1);
    const double x1 = 1 * h, xlast = (n - 1) * h;
    bounds.push_back(0.0);
    for (int k = prm.end_levels; k >= 1; --k) bounds.push_back(x1 * std::pow(0.5, k));
    for (int e = 1; e <= n - 1; ++e) bounds.push_back(e * h);
    for (int k = 1; k <= prm.end_levels; ++k)
        bounds.push_back(xlast + (1.0 - xlast) * (1.0 - std::pow(0.5, k)));
    bounds.push_back(1.0);
    std::vector<std::pair<double, double>> elems;
    for (size_t b = 0; b + 1 < bounds.size(); ++b)
        elems.emplace_back(bounds[b], bounds[b + 1]);
    const int m = static_cast<int>(elems.size());

    const auto gl_d = jacobi::gauss_legendre_rule(prm.gauss_distant);
    const auto gl_n = jacobi::gauss_legendre_rule(prm.gauss_near);
    const auto gl_u = jacobi::gauss_legendre_rule(prm.duffy);
    const auto gj_inner = jacobi::gauss_jacobi_rule(1.0 - 2.0 * s, 0.0, prm.duffy);
    const auto gj_outer = jacobi::gauss_jacobi_rule(0.0, 2.0 - 2.0 * s, prm.duffy);
    const auto gj_corner = jacobi::gauss_jacobi_rule(2.0 - 2.0 * s, 0.0, prm.duffy);

    // cached values for the distant-pair sweep
    Eigen::MatrixXd X(m, prm.gauss_distant), W(m, prm.gauss_distant), V(m, prm.gauss_distant);
    for (int e = 0; e < m; ++e) {
        const auto [a, b] = elems[e];
        for (int k = 0; k < prm.gauss_distant; ++k) {
            X(e, k) = a + (b - a) * gl_d.nodes[k];
            W(e, k) = (b - a) * gl_d.weights[k];
            V(e, k) = v(X(e, k));
        }
    }

    const double pow_exp = -1.0 - 2.0 * s;
    double total = 0.0;

    for (int i = 0; i < m; ++i) {
        const auto [ai, bi] = elems[i];
        for (int j = i + 1; j < m; ++j) {
            const auto [aj, bj] = elems[j];
            if (aj == bi) continue;  // touching pairs handled below
            const double gap = aj - bi;
            if (gap < std::max(bi - ai, bj - aj)) {
                // close but separated: kernel varies strongly, use the finer rule
                for (int k = 0; k < prm.gauss_near; ++k) {
                    const double x = ai + (bi - ai) * gl_n.nodes[k];
                    const double wx = (bi - ai) * gl_n.weights[k];
                    const double vx = v(x);
                    for (int l = 0; l < prm.gauss_near; ++l) {
                        const double y = aj + (bj - aj) * gl_n.nodes[l];
                        const double wy = (bj - aj) * gl_n.weights[l];
                        const double d = vx - v(y);
                        total += 2.0 * wx * wy * d * d * std::pow(y - x, pow_exp);
                    }
                }
            } else {
                for (int k = 0; k < prm.gauss_distant; ++k)
                    for (int l = 0; l < prm.gauss_distant; ++l) {
                        const double d = V(i, k) - V(j, l);
                        total += 2.0 * W(i, k) * W(j, l) * d * d *
                                 std::pow(std::abs(X(i, k) - X(j, l)), pow_exp);
                    }
            }
        }
    }

    // diagonal pairs: 2 int_a^b int_0^{b-x} ((v(x+d)-v(x))/d)^2 d^{1-2s} dd dx;
    // the inner integral carries a (b-x)^{2-2s} factor absorbed into the outer rule.
    for (int e = 0; e < m; ++e) {
        const auto [a, b] = elems[e];
        const double L = b - a;
        double acc = 0.0;
        for (int k = 0; k < prm.duffy; ++k) {
            const double x = a + L * gj_outer.nodes[k];
            const double Lx = b - x;
            const double vx = v(x);
            double inner = 0.0;
            for (int l = 0; l < prm.duffy; ++l) {
                const double d = Lx * gj_inner.nodes[l];
                const double qd = (v(x + d) - vx) / d;
                inner += gj_inner.weights[l] * qd * qd;
            }
            acc += gj_outer.weights[k] * inner;
        }
        total += 2.0 * acc * std::pow(L, 3.0 - 2.0 * s);
    }

    // adjacent pairs: corner at c, split by the diagonal into two Duffy triangles
    for (int e = 0; e + 1 < m; ++e) {
        const double c = elems[e].second;
        if (elems[e + 1].first != c) continue;
        const double h1 = c - elems[e].first;
        const double h2 = elems[e + 1].second - c;
        for (int tri = 0; tri < 2; ++tri) {
            const double ha = tri == 0 ? h1 : h2;
            const double ratio = tri == 0 ? h2 / h1 : h1 / h2;
            double acc = 0.0;
            for (int k = 0; k < prm.duffy; ++k) {
                const double xi = ha * gj_corner.nodes[k];
                const double vnear = tri == 0 ? v(c - xi) : v(c + xi);
                double uin = 0.0;
                for (int l = 0; l < prm.duffy; ++l) {
                    const double u = gl_u.nodes[l];
                    const double far = tri == 0 ? v(c + ratio * xi * u) : v(c - ratio * xi * u);
                    const double qd = (far - vnear) / xi;
                    uin += gl_u.weights[l] * qd * qd * std::pow(1.0 + ratio * u, pow_exp);
                }
                acc += gj_corner.weights[k] * uin;
            }
            total += 2.0 * ratio * acc * std::pow(ha, 3.0 - 2.0 * s);
        }
    }

    return total;
}

}  // namespace

double slobodetskii_error(const ManufacturedCase& mc, const FemSystem& system) {
    const double s = mc.alpha / 2.0;
    const auto v = [&](double x) { return mc.u_exact(x) - system.eval(x); };
    const double primary = slobodetskii_run(v, system.mesh, s, {6, 10, 10, 30});
    const double check = slobodetskii_run(v, system.mesh, s, {8, 12, 14, 34});
    if (std::abs(primary - check) > 1e-2 * std::abs(check) + 1e-24)
        throw AccuracyError("slobodetskii_error: quadrature refinements disagree");
    return std::sqrt(check);
}

StudyTable convergence_study(const ManufacturedCase& mc, const std::vector<int>& n_list,
                             bool with_seminorm) {
    if (n_list.empty()) throw DomainError("convergence_study: empty resolution list");
    for (size_t k = 0; k < n_list.size(); ++k) {
        const int n = n_list[k];
        if (n < 2 || (n & (n - 1)) != 0)
            throw DomainError("convergence_study: resolutions must be dyadic");
        if (k > 0 && n != 2 * n_list[k - 1])
            throw DomainError("convergence_study: resolutions must double");
    }

    StudyTable table{};
    if (mc.r == 0.5) {
        table.pred_seminorm = 0.5;
        table.pred_l2 = 1.0;
    } else {
        const auto [p, q] = kernelspace::kernel_exponents(mc.alpha, mc.r);
        table.pred_seminorm = std::min(p, q) + 1.5 - mc.alpha / 2.0;
        table.pred_l2 = 2.0 * table.pred_seminorm;
    }

    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (int n : n_list) {
        const Mesh mesh(n);
        const FemSystem sys = solve_fem(mc, mesh);
        StudyRow row{n, mesh.h(), nan, nan, l2_error(mc, sys), nan};
        if (with_seminorm) row.seminorm = slobodetskii_error(mc, sys);
        if (!table.rows.empty()) {
            const StudyRow& prev = table.rows.back();
            row.l2_rate = std::log2(prev.l2 / row.l2);
            if (with_seminorm) row.seminorm_rate = std::log2(prev.seminorm / row.seminorm);
        }
        table.rows.push_back(row);
    }
    return table;
}

}  // namespace fracspectral::fem
