#include "disp2d/lowenergy.hpp"
#include "disp2d/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>

namespace disp2d {

namespace {

// Case boundary: |int V| < 1e-10 ||V||_1 selects case 2; the warning band
// extends to 1e-6 ||V||_1.
constexpr double kCaseLowerRel = 1e-10;
constexpr double kCaseWarnRel = 1e-6;

Eigen::MatrixXd real_t_matrix(const SampledPotential& pot)
{
    KernelOperator g0 = g0_operator(pot.grid);
    Eigen::MatrixXd T = pot.U.asDiagonal();
    T += pot.v.asDiagonal() * g0.m.real() * pot.v.asDiagonal();
    return T;
}

double cond_estimate(const Eigen::PartialPivLU<Eigen::MatrixXcd>& lu, const Eigen::MatrixXcd& m)
{
    return m.norm() * lu.inverse().norm();   // Frobenius-based, adequate for reporting
}

} // namespace

std::vector<double> lambda_ladder(double lo, double hi, int points_per_decade)
{
    if (!(lo > 0 && hi > lo)) throw ConfigError("lambda_ladder: need 0 < lo < hi");
    if (points_per_decade < 2) throw ConfigError("lambda_ladder: points_per_decade >= 2");
    const double decades = std::log10(hi / lo);
    const int n = std::max(2, static_cast<int>(std::lround(decades * points_per_decade)) + 1);
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k)
        out[k] = lo * std::pow(hi / lo, double(k) / (n - 1));
    return out;
}

RegularityReport regularity_test(const SampledPotential& pot, double tau_abs)
{
    if (pot.zero || pot.l1_norm <= 0)
        throw ConfigError("regularity_test: zero potential");
    const int n = pot.size();
    const auto& grid = *pot.grid;
    const Eigen::VectorXd sw = grid.weights().cwiseSqrt();

    const Eigen::MatrixXd T = real_t_matrix(pot);
    const ProjectionPair pq = projections(pot);
    const Eigen::MatrixXd QTQ = pq.Q * T * pq.Q;

    // hat coordinates: symmetric problem, eigenvalues = signed singular values
    const Eigen::MatrixXd QTQh_raw = sw.asDiagonal() * QTQ * sw.cwiseInverse().asDiagonal();
    const Eigen::MatrixXd QTQh = 0.5 * (QTQh_raw + QTQh_raw.transpose());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(QTQh);
    if (eig.info() != Eigen::Success) throw NumericalError("regularity_test: eigensolver failed");

    // drop the structural zero eigenvector along v-hat
    Eigen::VectorXd vh = sw.cwiseProduct(pot.v);
    vh.normalize();
    int drop = 0;
    double best_overlap = -1;
    for (int k = 0; k < n; ++k) {
        const double ov = std::abs(eig.eigenvectors().col(k).dot(vh));
        if (ov > best_overlap) { best_overlap = ov; drop = k; }
    }
    double sigma_min = std::numeric_limits<double>::infinity();
    double sigma_max = 0;
    for (int k = 0; k < n; ++k) {
        if (k == drop) continue;
        sigma_min = std::min(sigma_min, std::abs(eig.eigenvalues()[k]));
        sigma_max = std::max(sigma_max, std::abs(eig.eigenvalues()[k]));
    }

    RegularityReport rep;
    rep.sigma_min = sigma_min;
    rep.tau = tau_abs >= 0 ? tau_abs : 1e-8 * sigma_max;
    rep.integral_of_V = pot.integral_of_V;
    rep.regular = sigma_min > rep.tau;
    if (rep.regular) {
        // block-diagonal trick: (QTQ + P)^{-1} agrees with D0 on ran Q
        const Eigen::MatrixXd B = QTQ + pq.P;
        const Eigen::MatrixXd D0 = pq.Q * B.partialPivLu().solve(Eigen::MatrixXd::Identity(n, n)) * pq.Q;
        rep.abs_bound = abs_op_norm(D0.cast<std::complex<double>>(), grid);
        rep.D0 = D0;
    }
    return rep;
}

QuqInverseResult quq_explicit_inverse(const Eigen::VectorXd& g, const SampledPotential& pot)
{
    if (pot.zero) throw ConfigError("quq_explicit_inverse: zero potential");
    const auto& w = pot.grid->weights();
    const Eigen::VectorXd Uv = pot.U.cwiseProduct(pot.v);
    const double intV = pot.integral_of_V;
    const auto wdot = [&](const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
        return (w.array() * x.array() * y.array()).sum();
    };

    QuqInverseResult out;
    const Eigen::VectorXd Ug = pot.U.cwiseProduct(g);
    const auto case1 = [&]() {
        const double c0 = -wdot(Ug, pot.v) / intV;
        return (Ug + c0 * Uv).eval();
    };
    const auto case2 = [&]() {
        const double c1 = -wdot(g, Uv) / pot.l1_norm;
        return (Ug + c1 * pot.v - c1 * Uv).eval();
    };

    const double a = std::abs(intV);
    if (a < kCaseLowerRel * pot.l1_norm) {
        out.case_used = 2;
        out.f = case2();
    } else if (a < kCaseWarnRel * pot.l1_norm) {
        out.case_used = 1;
        out.near_degenerate = true;
        out.f = case1();
        out.f_alt = case2();
    } else {
        out.case_used = 1;
        out.f = case1();
    }
    return out;
}

Eigen::MatrixXcd feshbach_invert(const FeshbachBlocks& blk)
{
    const auto n1 = blk.a11.rows(), n2 = blk.a22.rows();
    if (blk.a11.cols() != n1 || blk.a22.cols() != n2 ||
        blk.a12.rows() != n1 || blk.a12.cols() != n2 ||
        blk.a21.rows() != n2 || blk.a21.cols() != n1)
        throw ConfigError("feshbach_invert: inconsistent block shapes");

    Eigen::FullPivLU<Eigen::MatrixXcd> lu22(blk.a22);
    if (!lu22.isInvertible()) throw NumericalError("feshbach_invert: block a22 is singular");
    const Eigen::MatrixXcd a22inv = lu22.inverse();

    const Eigen::MatrixXcd schur = blk.a11 - blk.a12 * a22inv * blk.a21;
    Eigen::FullPivLU<Eigen::MatrixXcd> luS(schur);
    if (!luS.isInvertible())
        throw NumericalError("feshbach_invert: Schur complement a11 - a12 a22^{-1} a21 is singular");
    const Eigen::MatrixXcd a = luS.inverse();

    Eigen::MatrixXcd inv(n1 + n2, n1 + n2);
    inv.topLeftCorner(n1, n1) = a;
    inv.topRightCorner(n1, n2) = -a * blk.a12 * a22inv;
    inv.bottomLeftCorner(n2, n1) = -a22inv * blk.a21 * a;
    inv.bottomRightCorner(n2, n2) = a22inv * blk.a21 * a * blk.a12 * a22inv + a22inv;
    return inv;
}

std::complex<double> LowEnergyExpansion::h(Branch b, double lambda) const
{
    const std::complex<double> hp(a * std::log(lambda) + z.real(), z.imag());
    return b == Branch::plus ? hp : std::conj(hp);
}

Eigen::MatrixXcd LowEnergyExpansion::error_term(Branch b, double lambda) const
{
    const KernelOperator M = m_operator(b, lambda, pot);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M.m);
    const Eigen::MatrixXcd Minv = lu.solve(Eigen::MatrixXcd::Identity(M.size(), M.size()));
    return Minv - S.cast<std::complex<double>>() / h(b, lambda)
        - QD0Q.cast<std::complex<double>>();
}

LowEnergyExpansion low_energy_expansion(const SampledPotential& pot,
                                        const std::vector<double>& ladder,
                                        double tau_abs)
{
    LowEnergyExpansion ex;
    ex.regularity = regularity_test(pot, tau_abs);
    if (!ex.regularity.regular)
        throw NumericalError("low_energy_expansion: zero is not a regular point (sigma_min = "
                             + std::to_string(ex.regularity.sigma_min) + ")");
    ex.pot = pot;

    const Eigen::MatrixXd T = real_t_matrix(pot);
    const ProjectionPair pq = projections(pot);
    const Eigen::MatrixXd& D0 = *ex.regularity.D0;

    ex.trace_term = (pq.P * T * pq.P - pq.P * T * pq.Q * D0 * pq.Q * T * pq.P).trace();
    ex.a = -pot.l1_norm / (2.0 * M_PI);
    ex.z = std::complex<double>(
        pot.l1_norm * (std::log(2.0) - euler_gamma) / (2.0 * M_PI) + ex.trace_term,
        pot.l1_norm / 4.0);

    // Feshbach blocks of A(lambda) collected at the h-independent order:
    // S = (I - QD0Q T) P (I - T QD0Q), rank <= 2.
    const int n = pot.size();
    const Eigen::MatrixXd ident = Eigen::MatrixXd::Identity(n, n);
    ex.S = (ident - D0 * T) * pq.P * (ident - T * D0);
    ex.QD0Q = D0;

    for (double lam : ladder) {
        if (std::abs(ex.h(Branch::plus, lam)) < 1e-12 * pot.l1_norm)
            throw NumericalError("low_energy_expansion: h(lambda) vanishes at lambda = "
                                 + std::to_string(lam) + "; shrink lambda1");
    }
    return ex;
}

std::vector<ExpansionErrorRow> expansion_error_scan(const LowEnergyExpansion& ex, Branch b,
                                                    const std::vector<double>& ladder)
{
    const auto& grid = *ex.pot.grid;
    std::vector<Eigen::MatrixXcd> E(ladder.size());
    std::vector<ExpansionErrorRow> rows(ladder.size());
    for (size_t k = 0; k < ladder.size(); ++k) {
        const double lam = ladder[k];
        const KernelOperator M = m_operator(b, lam, ex.pot);
        Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M.m);
        const Eigen::MatrixXcd Minv = lu.solve(Eigen::MatrixXcd::Identity(M.size(), M.size()));
        E[k] = Minv - ex.S.cast<std::complex<double>>() / ex.h(b, lam)
            - ex.QD0Q.cast<std::complex<double>>();
        rows[k].lambda = lam;
        rows[k].hs = hs_norm(E[k], grid);
        rows[k].hs_scaled = rows[k].hs / std::sqrt(lam);
        rows[k].cond_m = cond_estimate(lu, M.m);
    }
    for (size_t k = 1; k + 1 < ladder.size(); ++k) {
        const Eigen::MatrixXcd fd = (E[k + 1] - E[k - 1]) / (ladder[k + 1] - ladder[k - 1]);
        rows[k].fd_scaled = std::sqrt(ladder[k]) * hs_norm(fd, grid);
    }
    return rows;
}

KernelOperator symmetric_resolvent(Branch b, double lambda, const SampledPotential& pot)
{
    KernelOperator r0 = free_resolvent_operator(b, lambda, pot.grid);
    if (pot.zero) {
        r0.tag = std::string("RV") + (b == Branch::plus ? "+" : "-") + "(" + std::to_string(lambda) + ")";
        return r0;
    }
    const KernelOperator M = m_operator(b, lambda, pot);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M.m);
    const Eigen::MatrixXcd vR0 = pot.v.cast<std::complex<double>>().asDiagonal() * r0.m;
    const Eigen::MatrixXcd X = lu.solve(vR0);
    if (!X.allFinite()) {
        throw NumericalError("symmetric_resolvent: M(lambda) numerically singular at lambda = "
                             + std::to_string(lambda)
                             + " (cond ~ " + std::to_string(cond_estimate(lu, M.m)) + ")");
    }
    KernelOperator rv{r0.m - r0.m * pot.v.cast<std::complex<double>>().asDiagonal() * X,
                      std::string("RV") + (b == Branch::plus ? "+" : "-") + "(" + std::to_string(lambda) + ")",
                      pot.grid};
    return rv;
}

} // namespace disp2d
