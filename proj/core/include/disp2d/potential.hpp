#pragma once

#include "disp2d/grid.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <vector>

namespace disp2d {

// Potential families with pointwise decay |V| <= C (1+|x|)^{-beta}; the
// built-ins are Gaussian or compactly supported so every decay hypothesis
// in play holds trivially.
struct PotentialSpec {
    enum class Family { gaussian, disk_indicator, smooth_bump, two_well_signed, radial_table };
    Family family = Family::gaussian;
    double amplitude = 1.0;
    double length_scale = 1.0;
    std::vector<Vec2> centers;                       // empty = origin; two_well uses first two
    double beta_claimed = 4.0;
    std::vector<std::pair<double, double>> radial_table;   // (r, V(r)), radii strictly increasing

    double value(const Vec2& x) const;
};

struct SampledPotential {
    std::shared_ptr<const Grid> grid;
    Eigen::VectorXd V;        // values per node
    Eigen::VectorXd v;        // |V|^{1/2}
    Eigen::VectorXd U;        // sign V, +1 where V = 0
    double l1_norm = 0;       // ||V||_1 by quadrature
    double kato_norm = 0;     // sup_x int (1+log^-|x-y|)^2 |V(y)| dy
    double integral_of_V = 0; // selects the explicit-inverse case
    double beta_fit = 0;      // log|V| vs log(1+|x|) regression slope (negated)
    double envelope_C = 0;    // max |V|(1+|x|)^{beta_claimed}
    bool zero = false;        // V == 0 on all nodes; low-energy ops reject this

    int size() const { return static_cast<int>(V.size()); }
};

SampledPotential build_potential(const PotentialSpec& spec, std::shared_ptr<const Grid> grid);

/// Kato-type norm by quadrature; the y = x log singularity uses the
/// equal-area cell average of (1 - log u)^2.
double kato_norm(const Eigen::VectorXd& V, const Grid& grid);

/// k(x, x1) = 1 + log^+|x1| + log^-|x - x1|; x = x1 is a singularity.
double log_weight_k(const Vec2& x, const Vec2& x1);

} // namespace disp2d
