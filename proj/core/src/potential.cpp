#include "disp2d/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace disp2d {

namespace {

double bump(double s)   // exp(1 - 1/(1-s^2)) on (-1,1), peak 1 at s = 0
{
    if (std::abs(s) >= 1.0) return 0.0;
    return std::exp(1.0 - 1.0 / (1.0 - s * s));
}

double radial_table_value(const std::vector<std::pair<double, double>>& tab, double r)
{
    if (tab.empty()) throw std::invalid_argument("radial_table: empty table");
    if (r <= tab.front().first) return tab.front().second;
    if (r >= tab.back().first) return 0.0;
    for (size_t k = 1; k < tab.size(); ++k) {
        if (r <= tab[k].first) {
            const double t = (r - tab[k - 1].first) / (tab[k].first - tab[k - 1].first);
            return (1 - t) * tab[k - 1].second + t * tab[k].second;
        }
    }
    return 0.0;
}

} // namespace

double PotentialSpec::value(const Vec2& x) const
{
    const Vec2 c0 = centers.empty() ? Vec2(0, 0) : centers[0];
    const double s = length_scale;
    switch (family) {
        case Family::gaussian:
            return amplitude * std::exp(-(x - c0).squaredNorm() / (s * s));
        case Family::disk_indicator:
            return (x - c0).norm() <= s ? amplitude : 0.0;
        case Family::smooth_bump:
            return amplitude * bump((x - c0).norm() / s);
        case Family::two_well_signed: {
            const Vec2 c1 = centers.size() > 1 ? centers[1] : Vec2(2.0 * s, 0.0);
            return amplitude * (std::exp(-(x - c0).squaredNorm() / (s * s))
                              - std::exp(-(x - c1).squaredNorm() / (s * s)));
        }
        case Family::radial_table:
            return amplitude * radial_table_value(radial_table, (x - c0).norm());
    }
    throw std::logic_error("PotentialSpec::value: bad family");
}

SampledPotential build_potential(const PotentialSpec& spec, std::shared_ptr<const Grid> grid)
{
    if (!grid || grid->size() == 0) throw std::invalid_argument("build_potential: empty grid");
    if (!std::isfinite(spec.amplitude) || !std::isfinite(spec.length_scale) || spec.length_scale <= 0)
        throw std::invalid_argument("build_potential: amplitude/length_scale must be finite, scale > 0");
    if (spec.family == PotentialSpec::Family::radial_table) {
        for (size_t k = 1; k < spec.radial_table.size(); ++k)
            if (spec.radial_table[k].first <= spec.radial_table[k - 1].first)
                throw std::invalid_argument("build_potential: radial_table radii must increase");
    }

    SampledPotential p;
    p.grid = grid;
    const int n = grid->size();
    p.V.resize(n);
    for (int i = 0; i < n; ++i) p.V[i] = spec.value(grid->nodes()[i]);
    p.v = p.V.cwiseAbs().cwiseSqrt();
    p.U.resize(n);
    for (int i = 0; i < n; ++i) p.U[i] = p.V[i] >= 0 ? 1.0 : -1.0;   // +1 where V = 0

    p.l1_norm = grid->integrate(p.V.cwiseAbs());
    p.integral_of_V = grid->integrate(p.V);
    p.zero = (p.V.cwiseAbs().maxCoeff() == 0.0);
    p.kato_norm = p.zero ? 0.0 : kato_norm(p.V, *grid);

    // decay fit: log|V| against log(1+|x|) where |V| > 1e-14
    std::vector<double> xs, ys;
    const auto radii = grid->node_radii();
    for (int i = 0; i < n; ++i) {
        if (std::abs(p.V[i]) > 1e-14) {
            xs.push_back(std::log1p(radii[i]));
            ys.push_back(std::log(std::abs(p.V[i])));
        }
    }
    if (xs.size() >= 2) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        for (size_t k = 0; k < xs.size(); ++k) {
            sx += xs[k]; sy += ys[k]; sxx += xs[k] * xs[k]; sxy += xs[k] * ys[k];
        }
        const double nn = double(xs.size());
        const double denom = nn * sxx - sx * sx;
        p.beta_fit = denom > 0 ? -(nn * sxy - sx * sy) / denom : 0.0;
    }
    p.envelope_C = 0.0;
    for (int i = 0; i < n; ++i)
        p.envelope_C = std::max(p.envelope_C,
                                std::abs(p.V[i]) * std::pow(1.0 + radii[i], spec.beta_claimed));
    return p;
}

double kato_norm(const Eigen::VectorXd& V, const Grid& grid)
{
    const int n = grid.size();
    if (V.size() != n) throw std::invalid_argument("kato_norm: size mismatch");
    const auto& w = grid.weights();
    const auto& rc = grid.cell_radius();
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        for (int j = 0; j < n; ++j) {
            double k2;
            if (i == j) {
                // mean of (1 - log u)^2 over the equal-area disk of radius rc
                const double l = 1.0 - std::log(rc[i]);
                k2 = l * l + l + 0.5;
            } else {
                const double d = grid.distance(i, j);
                const double lm = d < 1.0 ? -std::log(d) : 0.0;
                k2 = (1.0 + lm) * (1.0 + lm);
            }
            acc += k2 * std::abs(V[j]) * w[j];
        }
        best = std::max(best, acc);
    }
    return best;
}

double log_weight_k(const Vec2& x, const Vec2& x1)
{
    const double d = (x - x1).norm();
    if (d == 0.0) throw std::domain_error("log_weight_k: x = x1");
    const double r1 = x1.norm();
    const double logp = r1 > 1.0 ? std::log(r1) : 0.0;
    const double logm = d < 1.0 ? -std::log(d) : 0.0;
    return 1.0 + logp + logm;
}

} // namespace disp2d
