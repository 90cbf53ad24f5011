#include "disp2d/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace disp2d {

std::shared_ptr<const Grid> Grid::polar(const PolarScheme& s)
{
    if (s.n_r < 8 || s.n_theta < 8) throw std::invalid_argument("Grid::polar: n_r, n_theta must be >= 8");
    if (s.r_max <= 0) throw std::invalid_argument("Grid::polar: r_max must be > 0");
    if (s.r_min_factor <= 0 || s.r_min_factor >= 1)
        throw std::invalid_argument("Grid::polar: r_min_factor must be in (0,1)");

    auto g = std::make_shared<Grid>();
    // Radial cells geometric toward the origin: b_0 = 0, b_k = r_max * q^{n_r - k}.
    const double q = std::pow(s.r_min_factor, 1.0 / (s.n_r - 1));
    std::vector<double> b(s.n_r + 1);
    b[0] = 0.0;
    for (int k = 1; k <= s.n_r; ++k) b[k] = s.r_max * std::pow(q, s.n_r - k);
    b[s.n_r] = s.r_max;

    const double dth = 2.0 * M_PI / s.n_theta;
    g->nodes_.reserve(static_cast<size_t>(s.n_r) * s.n_theta);
    std::vector<double> w;
    w.reserve(g->nodes_.capacity());
    for (int i = 0; i < s.n_r; ++i) {
        const double r0 = b[i], r1 = b[i + 1];
        // area centroid of the annulus: integrates functions linear in r exactly
        const double rc = (2.0 / 3.0) * (r1 * r1 * r1 - r0 * r0 * r0) / (r1 * r1 - r0 * r0);
        const double wi = 0.5 * (r1 * r1 - r0 * r0) * dth;
        for (int k = 0; k < s.n_theta; ++k) {
            const double th = (k + 0.5) * dth;
            g->nodes_.emplace_back(rc * std::cos(th), rc * std::sin(th));
            w.push_back(wi);
        }
    }
    g->weights_ = Eigen::Map<Eigen::VectorXd>(w.data(), static_cast<Eigen::Index>(w.size()));
    g->cell_radius_ = (g->weights_ / M_PI).cwiseSqrt();
    g->breakpoints_ = std::move(b);
    g->scheme_ = "polar(" + std::to_string(s.n_r) + "," + std::to_string(s.n_theta) + ","
        + std::to_string(s.r_max) + ")";
    g->covered_area_ = M_PI * s.r_max * s.r_max;
    return g;
}

std::shared_ptr<const Grid> Grid::cartesian(const CartesianScheme& s)
{
    if (s.n < 8) throw std::invalid_argument("Grid::cartesian: n must be >= 8");
    if (s.half_width <= 0) throw std::invalid_argument("Grid::cartesian: half_width must be > 0");

    auto g = std::make_shared<Grid>();
    const double h = 2.0 * s.half_width / s.n;
    g->nodes_.reserve(static_cast<size_t>(s.n) * s.n);
    for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j)
            g->nodes_.emplace_back(-s.half_width + (i + 0.5) * h, -s.half_width + (j + 0.5) * h);
    g->weights_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(g->nodes_.size()), h * h);
    g->cell_radius_ = (g->weights_ / M_PI).cwiseSqrt();
    g->scheme_ = "cartesian(" + std::to_string(s.n) + "," + std::to_string(s.half_width) + ")";
    g->covered_area_ = 4.0 * s.half_width * s.half_width;
    return g;
}

Eigen::VectorXd Grid::node_radii() const
{
    Eigen::VectorXd r(size());
    for (int i = 0; i < size(); ++i) r[i] = nodes_[i].norm();
    return r;
}

std::complex<double> Grid::inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const
{
    return (weights_.cast<std::complex<double>>().array() * f.array() * g.conjugate().array()).sum();
}

std::shared_ptr<const Grid> refine(const Grid& g)
{
    const std::string& s = g.scheme();
    if (s.rfind("polar", 0) == 0) {
        const int nr = static_cast<int>(g.radial_breakpoints().size()) - 1;
        const int nth = g.size() / nr;
        const double rmax = g.radial_breakpoints().back();
        const double rmin = g.radial_breakpoints()[1];
        PolarScheme ps;
        ps.n_r = 2 * nr;
        ps.n_theta = 2 * nth;
        ps.r_max = rmax;
        // keep the same innermost scale so refinement compares like with like
        ps.r_min_factor = std::pow(rmin / rmax, (2.0 * nr - 1.0) / (nr - 1.0) / 2.0);
        return Grid::polar(ps);
    }
    const int n = static_cast<int>(std::lround(std::sqrt(double(g.size()))));
    CartesianScheme cs;
    cs.n = 2 * n;
    cs.half_width = std::sqrt(g.covered_area()) / 2.0;
    return Grid::cartesian(cs);
}

} // namespace disp2d
