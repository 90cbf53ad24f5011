#pragma once

#include "disp2d/cutoff.hpp"
#include "disp2d/lowenergy.hpp"
#include "disp2d/oscint.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace disp2d {

struct BumpSpec {
    Vec2 center{0.0, 0.0};
    double width = 1.25;

    double value(const Vec2& x) const;   // exp(-|x-c|^2 / w^2), unnormalized
};

struct LatticeParams {
    double half_width = 32.0;   // [-L, L]^2
    double spacing = 1.0;
    int dense_cap = 6000;       // refuse eigendecompositions beyond this
    double interior_window = 0.5;   // sup-norm over |x| <= window * L
};

struct EvolutionConfig {
    std::vector<double> t_list;        // sorted ascending, positive
    double lambda1 = 0.05;             // low/high split scale (low-energy machinery)
    double lambda_max = 0.30;          // quadrature ceiling; roll-off hits zero at 2*lambda_max
    CutoffFamily chi = CutoffFamily::low_pass_at(0.05);
    OscQuadOptions quadrature;
    int born_terms = 6;
    BumpSpec f, g;
    LatticeParams lattice;
    bool check_tail = false;           // re-run with doubled lambda_max, record drift
    bool use_conjugation = true;       // R_V- from conj(R_V+) (halves work)

    void validate() const;
};

struct DecayRow {
    double t = 0;
    double value = 0;
    bool converged = true;
};

struct DecayReport {
    std::vector<DecayRow> rows;
    double fitted_exponent = 0;
    double exponent_ci = 0;       // least-squares 95% half-width
    std::string method_tag;       // spectral | lattice | free
    double tail_fraction = -1;    // max relative drift under lambda_max doubling (check_tail)
    int rows_excluded = 0;        // nonpositive rows dropped by the fit
};

struct FitResult {
    double slope = 0;
    double ci = 0;
    int used = 0;
    int excluded = 0;
};

/// Log-log least squares. Throws NumericalError with fewer than 8 usable rows
/// or less than a decade of t-span.
FitResult decay_fit(const std::vector<DecayRow>& rows);

/// Born partial sum sum_{l=0}^{N} R0 (-V R0)^l and the contraction factor
/// ||v R0 v|| (operator norm). Divergence is reported via the factor, not raised.
struct BornSeriesResult {
    KernelOperator partial_sum;
    double contraction = 0;
};
BornSeriesResult born_series_resolvent(Branch b, double lambda, int terms,
                                       const SampledPotential& pot);

/// |<e^{itH} P_ac f, g>| rows by the spectral lambda-integral with the
/// smooth roll-off at lambda_max. The resolvent pairing is tabulated once
/// (lazily, cached) and shared across all t.
DecayReport spectral_evolution(const SampledPotential& pot, const EvolutionConfig& cfg);

// Dense five-point lattice oracle: H_h = -Delta_h + V on [-L, L]^2, full
// eigendecomposition, P_ac = projection onto E >= 0, spectral synthesis.
class LatticeOracle {
public:
    LatticeOracle(const PotentialSpec& pot, const EvolutionConfig& cfg);

    /// e^{itH_h} (filtered, P_ac-projected) f on the lattice.
    Eigen::VectorXcd evolve(double t, bool project_ac = true, bool apply_filter = true) const;

    DecayReport decay(const std::vector<double>& t_list) const;

    double bound_state_component() const;    // ||f - P_ac f||_2
    double filtered_pairing(double t) const; // |<e^{itH} W P_ac f, g>|
    double l2_norm(const Eigen::VectorXcd& u) const;

    int sites() const { return static_cast<int>(f_.size()); }
    const Eigen::VectorXd& eigenvalues() const { return evals_; }
    double spacing() const { return h_; }
    const std::vector<Vec2>& points() const { return pts_; }
    const Eigen::VectorXd& f() const { return f_; }

private:
    double h_ = 1.0;
    double half_width_ = 0;
    double interior_ = 0.5;
    double lambda_max_ = 0;
    std::vector<Vec2> pts_;
    Eigen::VectorXd evals_;
    Eigen::MatrixXd evecs_;
    Eigen::VectorXd f_, g_;
    Eigen::VectorXd coef_;      // Psi^T f
    Eigen::VectorXd coef_g_;
    Eigen::VectorXd filter_;    // W(sqrt(E)) * [E >= 0]
};

/// Free evolution by the exact kernel e^{i|x-y|^2/(4t)}/(4 pi i t): direct
/// quadrature of sources against targets. t = 0 returns f (identity shortcut;
/// targets must match the source nodes).
Eigen::VectorXcd free_evolve(const std::vector<Vec2>& source_nodes, const Eigen::VectorXd& source_weights,
                             const Eigen::VectorXcd& f, double t, const std::vector<Vec2>& targets);

/// Modulus of the free kernel, (4 pi |t|)^{-1}.
double free_kernel_modulus(double t);

/// Free decay rows: |e^{itH_0} f| sup over the grid, f an L1-normalized bump.
DecayReport free_evolution_decay(const Grid& grid, const BumpSpec& f, const std::vector<double>& t_list);

} // namespace disp2d
