#include "disp2d/operators.hpp"
#include "disp2d/parallel.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <stdexcept>

namespace disp2d {

Eigen::MatrixXcd symmetrized(const Eigen::MatrixXcd& a, const Grid& grid)
{
    const Eigen::VectorXd s = grid.weights().cwiseSqrt();
    return s.asDiagonal() * a * s.cwiseInverse().asDiagonal();
}

Eigen::MatrixXcd from_symmetrized(const Eigen::MatrixXcd& m, const Grid& grid)
{
    const Eigen::VectorXd s = grid.weights().cwiseSqrt();
    return s.cwiseInverse().asDiagonal() * m * s.asDiagonal();
}

double hs_norm(const Eigen::MatrixXcd& m, const Grid& grid)
{
    const auto& w = grid.weights();
    double acc = 0;
    for (int j = 0; j < m.cols(); ++j)
        acc += (w.array() * m.col(j).cwiseAbs2().array()).sum() / w[j];
    return std::sqrt(acc);
}

double hs_norm(const KernelOperator& a) { return hs_norm(a.m, *a.grid); }

double weighted_hs_norm(const KernelOperator& a, double s)
{
    const auto& g = *a.grid;
    const auto& w = g.weights();
    Eigen::VectorXd decay(g.size());
    for (int i = 0; i < g.size(); ++i)
        decay[i] = std::pow(1.0 + g.nodes()[i].norm(), -2.0 * s);
    double acc = 0;
    for (int j = 0; j < a.m.cols(); ++j)
        acc += decay[j] * (w.array() * decay.array() * a.m.col(j).cwiseAbs2().array()).sum() / w[j];
    return std::sqrt(acc);
}

double op_norm(const Eigen::MatrixXcd& m, const Grid& grid)
{
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(symmetrized(m, grid));
    return svd.singularValues()(0);
}

double op_norm(const KernelOperator& a) { return op_norm(a.m, *a.grid); }

double abs_op_norm(const Eigen::MatrixXcd& m, const Grid& grid)
{
    const Eigen::MatrixXcd am = m.cwiseAbs().cast<std::complex<double>>();
    return op_norm(am, grid);
}

double symmetry_defect(const KernelOperator& a)
{
    const auto& w = a.grid->weights();
    double worst = 0, scale = 0;
    for (int i = 0; i < a.size(); ++i)
        for (int j = 0; j < a.size(); ++j) {
            const double kij = std::abs(a.m(i, j)) / w[j];
            worst = std::max(worst, std::abs(a.m(i, j) / w[j] - a.m(j, i) / w[i]));
            scale = std::max(scale, kij);
        }
    return scale > 0 ? worst / scale : 0.0;
}

KernelOperator g0_operator(std::shared_ptr<const Grid> grid)
{
    const int n = grid->size();
    const auto& w = grid->weights();
    const auto& rc = grid->cell_radius();
    KernelOperator op{Eigen::MatrixXcd(n, n), "G0", grid};
    parallel_for(n, [&](int i) {
        for (int j = 0; j < n; ++j) {
            const double k = i == j
                ? -(std::log(rc[i]) - 0.5) / (2.0 * M_PI)
                : -std::log(grid->distance(i, j)) / (2.0 * M_PI);
            op.m(i, j) = k * w[j];
        }
    });
    return op;
}

KernelOperator free_resolvent_operator(Branch b, double lambda, std::shared_ptr<const Grid> grid)
{
    if (lambda <= 0) throw std::domain_error("free_resolvent_operator: lambda must be > 0");
    const int n = grid->size();
    const auto& w = grid->weights();
    const auto& rc = grid->cell_radius();
    KernelOperator op{Eigen::MatrixXcd(n, n),
                      std::string("R0") + (b == Branch::plus ? "+" : "-") + "(" + std::to_string(lambda) + ")",
                      grid};
    parallel_for(n, [&](int i) {
        for (int j = 0; j < n; ++j) {
            // log part cell-averaged; the remainder is smooth and evaluated at r_c
            const std::complex<double> k = i == j
                ? free_resolvent_kernel(b, lambda, rc[i]) + 1.0 / (4.0 * M_PI)
                : free_resolvent_kernel(b, lambda, grid->distance(i, j));
            op.m(i, j) = k * w[j];
        }
    });
    return op;
}

KernelOperator e0_operator(Branch b, double lambda, std::shared_ptr<const Grid> grid)
{
    if (lambda <= 0) throw std::domain_error("e0_operator: lambda must be > 0");
    const int n = grid->size();
    const auto& w = grid->weights();
    const auto& rc = grid->cell_radius();
    KernelOperator op{Eigen::MatrixXcd(n, n),
                      std::string("E0") + (b == Branch::plus ? "+" : "-") + "(" + std::to_string(lambda) + ")",
                      grid};
    parallel_for(n, [&](int i) {
        for (int j = 0; j < n; ++j) {
            const double r = i == j ? rc[i] : grid->distance(i, j);
            op.m(i, j) = e0_error_kernel(b, lambda, r) * w[j];
        }
    });
    return op;
}

KernelOperator m_operator(Branch b, double lambda, const SampledPotential& pot)
{
    KernelOperator r0 = free_resolvent_operator(b, lambda, pot.grid);
    KernelOperator op = v_sandwich(pot.v, r0, std::string("M") + (b == Branch::plus ? "+" : "-")
                                                  + "(" + std::to_string(lambda) + ")");
    op.m += pot.U.cast<std::complex<double>>().asDiagonal();
    return op;
}

KernelOperator v_sandwich(const Eigen::VectorXd& v, const KernelOperator& a, const std::string& tag)
{
    KernelOperator op{Eigen::MatrixXcd(a.m.rows(), a.m.cols()), tag, a.grid};
    op.m = v.cast<std::complex<double>>().asDiagonal() * a.m * v.cast<std::complex<double>>().asDiagonal();
    return op;
}

ProjectionPair projections(const SampledPotential& pot)
{
    if (pot.zero || pot.l1_norm <= 0)
        throw std::invalid_argument("projections: zero potential has no projection pair");
    const int n = pot.size();
    const auto& w = pot.grid->weights();
    ProjectionPair pq;
    pq.P = (pot.v * (pot.v.cwiseProduct(w)).transpose()) / pot.l1_norm;
    pq.Q = Eigen::MatrixXd::Identity(n, n) - pq.P;
    return pq;
}

std::complex<double> g_constant(Branch b, double lambda, const SampledPotential& pot)
{
    return pot.l1_norm * resolvent_expansion_constant(b, lambda);
}

} // namespace disp2d
