#pragma once

#include "disp2d/grid.hpp"
#include "disp2d/potential.hpp"
#include "disp2d/specfun.hpp"

#include <memory>
#include <string>

namespace disp2d {

// Dense kernel matrix in the quadrature convention A(i,j) = K(x_i, x_j) w_j.
// Operator composition and inversion are then plain matrix algebra; norms and
// adjoints go through the symmetrizing similarity W^{1/2} A W^{-1/2}.
struct KernelOperator {
    Eigen::MatrixXcd m;
    std::string tag;
    std::shared_ptr<const Grid> grid;

    int size() const { return static_cast<int>(m.rows()); }
    std::complex<double> kernel_at(int i, int j) const { return m(i, j) / grid->weights()[j]; }
    Eigen::VectorXcd apply(const Eigen::VectorXcd& f) const { return m * f; }
};

/// W^{1/2} A W^{-1/2}: unitarily equivalent to the operator on L^2(w);
/// symmetric kernels become symmetric matrices here.
Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& a, const Grid& grid);
Eigen::MatrixXcd from_symmetrized(const Eigen::MatrixXcd& s, const Grid& grid);

/// Plain Hilbert-Schmidt norm: (sum_ij w_i |K_ij|^2 w_j)^{1/2}.
double hs_norm(const KernelOperator& a);
double hs_norm(const Eigen::MatrixXcd& m, const Grid& grid);

/// HS norm between the weighted spaces L^{2,s} -> L^{2,-s}:
/// quadrature of (1+|x|)^{-2s} |K(x,y)|^2 (1+|y|)^{-2s}. s = 0 is plain HS.
double weighted_hs_norm(const KernelOperator& a, double s);

/// Operator norm on L^2(w) (largest singular value of the symmetrized matrix).
double op_norm(const Eigen::MatrixXcd& m, const Grid& grid);
double op_norm(const KernelOperator& a);

/// Operator norm of the entrywise-absolute-value kernel.
double abs_op_norm(const Eigen::MatrixXcd& m, const Grid& grid);

/// Relative kernel-symmetry defect max |A_ij/w_j - A_ji/w_i| / max|K|.
double symmetry_defect(const KernelOperator& a);

/// (G0 f)(x) = -(1/2pi) int log|x-y| f(y) dy; diagonal = equal-area cell
/// average of the log (exact for the singular part).
KernelOperator g0_operator(std::shared_ptr<const Grid> grid);

/// R0±(lambda^2) as a kernel matrix; diagonal via the same cell-average rule
/// applied to the log part, smooth remainder at r = r_c: R0(lambda, r_c) + 1/(4pi).
KernelOperator free_resolvent_operator(Branch b, double lambda, std::shared_ptr<const Grid> grid);

/// vE0±(lambda)v ingredient: E0 error kernel as a matrix (same diagonal rule).
KernelOperator e0_operator(Branch b, double lambda, std::shared_ptr<const Grid> grid);

/// M±(lambda) = U + v R0±(lambda^2) v.
KernelOperator m_operator(Branch b, double lambda, const SampledPotential& pot);

/// vG0v, vE0v, vR0v: diagonal-v sandwiches of a kernel operator.
KernelOperator v_sandwich(const Eigen::VectorXd& v, const KernelOperator& a, const std::string& tag);

struct ProjectionPair {
    Eigen::MatrixXd P;   // rank one: v <., v> / ||V||_1 in the weighted inner product
    Eigen::MatrixXd Q;   // I - P
};

/// P = v <., v>/||V||_1, Q = I - P; requires ||V||_1 > 0.
ProjectionPair projections(const SampledPotential& pot);

/// g±(lambda) = ||V||_1 (±i/4 - gamma/(2pi) - log(lambda/2)/(2pi)).
std::complex<double> g_constant(Branch b, double lambda, const SampledPotential& pot);

} // namespace disp2d
