#pragma once

#include "disp2d/specfun.hpp"

#include <functional>
#include <vector>

namespace disp2d {

struct OscQuadOptions {
    double rel_tol = 1e-6;
    int max_refinements = 14;
    int initial_panels = 64;      // uniform part of the mu = lambda^2 panelization
    int geometric_panels = 36;    // toward mu = 0, ratio-2 panels
    double lambda_floor_factor = 1e-5;   // closure below lambda = factor * Lambda
    bool throw_on_nonconvergence = true;
};

struct OscQuadResult {
    Complex value;
    bool converged = false;
    int refinements = 0;
    double last_rel_change = 0;
    double worst_panel_lo = 0, worst_panel_hi = 0;    // mu-interval with largest change
};

/// int_0^Lambda e^{i t lambda^2} a(lambda) dlambda via the substitution
/// mu = lambda^2 (Filon panels, local quadratic amplitude, phase integrated
/// exactly). Endpoint handled by geometric sub-panels; amplitudes with an
/// integrable lambda -> 0 singularity are fine. Throws NumericalError if the
/// panel-halving check does not reach rel_tol.
OscQuadResult oscillatory_quadrature(const std::function<Complex(double)>& a, double Lambda,
                                     double t, const OscQuadOptions& opts = {});

/// Tabulated-amplitude convenience: linear interpolation between nodes
/// (nodes strictly increasing in (0, Lambda]).
OscQuadResult oscillatory_quadrature(const std::vector<double>& lambda_nodes,
                                     const std::vector<Complex>& values, double t,
                                     const OscQuadOptions& opts = {});

struct Amplitude1D {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    double support_lo = -1, support_hi = 1;   // compact support
};

struct Phase1D {
    std::function<double(double)> value;
    std::function<double(double)> derivative;
    std::function<double(double)> second;
};

// Both sides of the stationary-phase bound
// |int e^{it phi} a| <= C delta^2 int (|a|/(delta^2+x^2) + chi_{|x|>delta} |a'|/|x|).
struct StationaryPhaseCheck {
    double t = 0;
    double delta = 0;     // |t|^{-1/2}
    double lhs = 0;
    double rhs = 0;
    double ratio = 0;     // lhs/rhs, 0 when both vanish
};

/// Requires phi(0) = phi'(0) = 0 and 1 <= phi'' <= C on the support (sampled).
StationaryPhaseCheck lemma2_check(const Amplitude1D& a, const Phase1D& phi, double t);

// Inner lambda-integral of the Born-term estimate: chain of m free resolvents,
// partition J (oscillation extracted) vs J* (kept amplitudes).
struct BornPhaseInstance {
    int m = 2;
    std::vector<int> J;        // subset of {1..m}; complement is J*
    std::vector<double> d;     // chain distances d_1..d_m, > 0
    double L = 1.0;            // chi2(lambda/L) ceiling; <= 0 selects the L = infinity surrogate
    double y0_scale = 8.0;
    int phase_sign = -1;       // e^{i(t lambda^2 ± lambda s)}

    double s() const;          // sum_{j in J} d_j
};

struct BornChainResult {
    Complex value;
    double t_abs_value = 0;    // t * |value|
    double s = 0;
    double lambda0 = 0;        // s / (2t)
    double bound_product = 1;  // prod_{l in J*} (1 + log^- d_l)
};

BornChainResult born_chain_integral(const BornPhaseInstance& inst, double t,
                                    const OscQuadOptions& opts = {});

struct NamedAmplitude {
    std::string name;
    Amplitude1D amplitude;
};

/// The three built-in sweep families: centered gaussian, off-center bump,
/// two-hump envelope.
std::vector<NamedAmplitude> lemma2_builtin_amplitudes();

/// phi(x) = x^2 (phi(0) = phi'(0) = 0, phi'' = 2).
Phase1D lemma2_default_phase();

} // namespace disp2d
