#pragma once

#include <Eigen/Dense>
#include <memory>
#include <string>
#include <vector>

namespace disp2d {

using Vec2 = Eigen::Vector2d;

struct PolarScheme {
    int n_r = 16;
    int n_theta = 16;
    double r_max = 8.0;
    double r_min_factor = 1e-3;   // innermost geometric breakpoint = r_max * factor
};

struct CartesianScheme {
    int n = 20;        // nodes per axis
    double half_width = 5.0;   // domain [-L, L]^2
};

// Quadrature nodes in R^2 with positive weights. Every integral operator of
// the toolkit is a kernel matrix over one of these.
class Grid {
public:
    static std::shared_ptr<const Grid> polar(const PolarScheme& s);
    static std::shared_ptr<const Grid> cartesian(const CartesianScheme& s);

    int size() const { return static_cast<int>(nodes_.size()); }
    const std::vector<Vec2>& nodes() const { return nodes_; }
    const Eigen::VectorXd& weights() const { return weights_; }
    const Eigen::VectorXd& cell_radius() const { return cell_radius_; }   // sqrt(w/pi)
    const std::string& scheme() const { return scheme_; }
    double covered_area() const { return covered_area_; }

    // Polar grids expose their radial breakpoints (tests snap feature radii onto them).
    const std::vector<double>& radial_breakpoints() const { return breakpoints_; }

    Eigen::VectorXd node_radii() const;
    double distance(int i, int j) const { return (nodes_[i] - nodes_[j]).norm(); }

    /// Quadrature of sampled values: sum_i w_i f_i.
    double integrate(const Eigen::VectorXd& f) const { return weights_.dot(f); }
    /// Weighted inner product <f, g> = sum_i w_i f_i conj(g_i).
    std::complex<double> inner(const Eigen::VectorXcd& f, const Eigen::VectorXcd& g) const;

private:
    std::vector<Vec2> nodes_;
    Eigen::VectorXd weights_;
    Eigen::VectorXd cell_radius_;
    std::vector<double> breakpoints_;
    std::string scheme_;
    double covered_area_ = 0;
};

std::shared_ptr<const Grid> refine(const Grid& g);   // doubles n_r/n_theta (polar) or n (cartesian)

} // namespace disp2d
