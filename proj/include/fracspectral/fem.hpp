#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

#include "fracspectral/errors.hpp"
#include "fracspectral/fracops.hpp"

namespace fracspectral::fem {

// Uniform partition of (0, 1).
struct Mesh {
    int n_intervals;

    explicit Mesh(int n) : n_intervals(n) {
        if (n < 2) throw DomainError("Mesh: need at least 2 intervals");
    }
    double h() const { return 1.0 / n_intervals; }
    double node(int i) const { return static_cast<double>(i) / n_intervals; }
};

// Continuous piecewise-linear Galerkin system for the weak form
//   B(w, v) = r (D^{-(2-a)} w', v') + (1-r) (D^{-(2-a)*} w', v'),
// assembled in closed form (no quadrature): the left fractional integral of a
// hat derivative is a sum of ((x - x_k)_+)^{2-a} terms.
struct FemSystem {
    Mesh mesh;
    double alpha;
    double r;
    Eigen::MatrixXd stiffness;  // interior nodes 1..n-1
    Eigen::VectorXd load;
    Eigen::VectorXd solution;   // nodal values at interior nodes

    // Piecewise-linear evaluation with homogeneous boundary values.
    double eval(double x) const;
};

// Stiffness entry B(phi_j, phi_i) for any i, j in 0..n, including the
// boundary half-hats (general piecewise form; assemble() uses the Toeplitz
// fast path over interior indices).
double hat_pair_entry(double alpha, double r, const Mesh& mesh, int i, int j);

Eigen::MatrixXd assemble(double alpha, double r, const Mesh& mesh);

// The four built-in manufactured problems. f is a sum of weighted power terms,
// f = sum_t c_t x^{a_t} (1-x)^{b_t}.
struct ManufacturedCase {
    int id;
    double alpha;
    double r;
    std::function<double(double)> u_exact;
    std::vector<fracops::WeightedPolynomial> f_terms;

    double f(double x) const {
        double s = 0.0;
        for (const auto& t : f_terms) s += t.eval(x);
        return s;
    }
};

ManufacturedCase manufactured_case(int id);

// <f, phi_i> in closed form for one-sided power terms and constants.
Eigen::VectorXd load_vector(const ManufacturedCase& mc, const Mesh& mesh);

FemSystem solve_fem(const ManufacturedCase& mc, const Mesh& mesh);

// || u - u_h ||_{L2}, graded composite Gauss per element with extra dyadic
// grading inside the two end elements.
double l2_error(const ManufacturedCase& mc, const FemSystem& system);

// Slobodetskii seminorm |u - u_h|_{H^s}, s = alpha/2, over the element-pair
// decomposition: tensor Gauss on distant pairs, Duffy-type transforms on
// touching pairs, dyadic grading of the two end elements.
double slobodetskii_error(const ManufacturedCase& mc, const FemSystem& system);

struct StudyRow {
    int n;
    double h;
    double seminorm;       // NaN when not measured
    double seminorm_rate;  // log2(e(2h)/e(h)); NaN on the first row
    double l2;
    double l2_rate;
};

struct StudyTable {
    std::vector<StudyRow> rows;
    double pred_seminorm;
    double pred_l2;
};

// Rows for each n in n_list (dyadic, increasing), plus the theoretical
// prediction: 0.50 / 1.0 for r = 1/2, else min{p, q} + 3/2 - alpha/2 and twice
// that for L2.
StudyTable convergence_study(const ManufacturedCase& mc, const std::vector<int>& n_list,
                             bool with_seminorm);

}  // namespace fracspectral::fem
