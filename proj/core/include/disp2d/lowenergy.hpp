#pragma once

#include "disp2d/operators.hpp"

#include <complex>
#include <optional>
#include <vector>

namespace disp2d {

// Zero-energy regularity: Q(U + vG0v)Q invertible on ran Q.
struct RegularityReport {
    double sigma_min = 0;            // smallest singular value of QTQ restricted to ran Q
    double tau = 0;                  // threshold used
    bool regular = false;
    double integral_of_V = 0;        // selects the explicit-inverse case
    double abs_bound = 0;            // operator norm of |QD0Q| kernel (regular case)
    std::optional<Eigen::MatrixXd> D0;   // [QTQ]^{-1} on ran Q, as Q (QTQ + P)^{-1} Q
};

/// tau_abs < 0 means the relative default 1e-8 * ||QTQ||.
RegularityReport regularity_test(const SampledPotential& pot, double tau_abs = -1.0);

struct QuqInverseResult {
    Eigen::VectorXd f;                    // primary solution
    int case_used = 1;                    // 1: integral != 0, 2: integral == 0
    bool near_degenerate = false;         // between the case tolerances; f_alt holds the other formula
    std::optional<Eigen::VectorXd> f_alt;
};

/// Explicit inverses: case 1 solves QUQ f = g; case 2 solves (QUQ + pi0) f = g,
/// pi0 f = <f, Uv> Uv / ||V||_1. Requires Qg = g.
QuqInverseResult quq_explicit_inverse(const Eigen::VectorXd& g, const SampledPotential& pot);

struct FeshbachBlocks {
    Eigen::MatrixXcd a11, a12, a21, a22;
};

/// 2x2 block inverse through the Schur complement a = (a11 - a12 a22^{-1} a21)^{-1}.
/// Throws NumericalError naming the failing block.
Eigen::MatrixXcd feshbach_invert(const FeshbachBlocks& blocks);

// M±(lambda)^{-1} = h±(lambda)^{-1} S + QD0Q + E±(lambda),
// h+(lambda) = a log(lambda) + z, h- = conj(h+).
class LowEnergyExpansion {
public:
    double a = 0;                     // -||V||_1 / (2 pi)
    std::complex<double> z;           // Im z = ||V||_1 / 4 for the plus branch
    double trace_term = 0;            // trace(PTP - PTQD0QTP), real
    Eigen::MatrixXd S;                // finite-rank, real kernel
    Eigen::MatrixXd QD0Q;
    RegularityReport regularity;
    SampledPotential pot;

    std::complex<double> h(Branch b, double lambda) const;
    /// E±(lambda) by subtraction from the directly inverted M±(lambda).
    Eigen::MatrixXcd error_term(Branch b, double lambda) const;
};

/// Requires a regular potential; throws NumericalError if h± vanishes on the
/// ladder (shrink lambda1).
LowEnergyExpansion low_energy_expansion(const SampledPotential& pot,
                                        const std::vector<double>& lambda_ladder,
                                        double tau_abs = -1.0);

struct ExpansionErrorRow {
    double lambda = 0;
    double hs = 0;            // ||E±(lambda)||_HS
    double hs_scaled = 0;     // lambda^{-1/2} ||E±||_HS
    double fd_scaled = 0;     // lambda^{1/2} ||central-difference d/dlambda E±||_HS (0 at ladder ends)
    double cond_m = 0;        // condition estimate of M±(lambda)
};

/// Scaling diagnostics of E± over a geometric ladder; finite differences use
/// ladder neighbors.
std::vector<ExpansionErrorRow> expansion_error_scan(const LowEnergyExpansion& exp, Branch b,
                                                    const std::vector<double>& ladder);

/// R_V±(lambda^2) = R0± - R0± v M±(lambda)^{-1} v R0±. V = 0 returns R0 exactly.
KernelOperator symmetric_resolvent(Branch b, double lambda, const SampledPotential& pot);

/// Geometric ladder, points_per_decade (24 by default per the scaling fits).
std::vector<double> lambda_ladder(double lo, double hi, int points_per_decade = 24);

} // namespace disp2d
