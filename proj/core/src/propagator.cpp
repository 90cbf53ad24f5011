#include "disp2d/propagator.hpp"
#include "disp2d/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <cmath>
#include <map>

namespace disp2d {

double BumpSpec::value(const Vec2& x) const
{
    return std::exp(-(x - center).squaredNorm() / (width * width));
}

void EvolutionConfig::validate() const
{
    if (t_list.empty()) throw ConfigError("evolution: t_list is empty");
    for (size_t k = 0; k < t_list.size(); ++k) {
        if (t_list[k] <= 0) throw ConfigError("evolution: t_list entries must be > 0");
        if (k > 0 && t_list[k] <= t_list[k - 1])
            throw ConfigError("evolution: t_list must be sorted ascending");
    }
    if (!(lambda1 > 0)) throw ConfigError("evolution: lambda1 must be > 0");
    if (!(lambda_max > lambda1 * 0.0) || lambda_max <= 0)
        throw ConfigError("evolution: lambda_max must be > 0");
    if (lambda_max < lambda1)
        throw ConfigError("evolution: need lambda1 < lambda_max");
    if (f.width <= 0 || g.width <= 0) throw ConfigError("evolution: bump widths must be > 0");
    if (born_terms < 0) throw ConfigError("evolution: born_terms must be >= 0");
    if (lattice.half_width <= 0 || lattice.spacing <= 0)
        throw ConfigError("lattice: half_width and spacing must be > 0");
    if (lattice.interior_window <= 0 || lattice.interior_window > 1)
        throw ConfigError("lattice: interior_window must be in (0, 1]");
}

BornSeriesResult born_series_resolvent(Branch b, double lambda, int terms,
                                       const SampledPotential& pot)
{
    if (lambda <= 0) throw ConfigError("born_series_resolvent: lambda must be > 0");
    if (terms < 0) throw ConfigError("born_series_resolvent: terms must be >= 0");
    const KernelOperator r0 = free_resolvent_operator(b, lambda, pot.grid);
    BornSeriesResult out{
        KernelOperator{r0.m, "Born" + std::to_string(terms) + (b == Branch::plus ? "+" : "-"), pot.grid},
        0.0};
    if (pot.zero) return out;

    const KernelOperator vr0v = v_sandwich(pot.v, r0, "vR0v");
    out.contraction = op_norm(vr0v);

    const Eigen::MatrixXcd VR0 = pot.V.cast<std::complex<double>>().asDiagonal() * r0.m;
    Eigen::MatrixXcd term = r0.m;
    for (int l = 1; l <= terms; ++l) {
        term = -(term * VR0).eval();
        out.partial_sum.m += term;
    }
    return out;
}

namespace {

Eigen::VectorXd normalized_bump(const Grid& grid, const BumpSpec& b)
{
    Eigen::VectorXd f(grid.size());
    for (int i = 0; i < grid.size(); ++i) f[i] = b.value(grid.nodes()[i]);
    const double mass = grid.integrate(f.cwiseAbs());
    if (mass <= 0) throw ConfigError("bump has zero mass on the grid");
    return f / mass;
}

// Resolvent-difference pairing p(lambda) = <[R_V+ - R_V-] f, g> / (2i), cached per lambda.
class PairingTable {
public:
    PairingTable(const SampledPotential& pot, Eigen::VectorXd f, Eigen::VectorXd g, bool use_conj)
        : pot_(pot), f_(std::move(f)), g_(std::move(g)), use_conj_(use_conj) {}

    double operator()(double lambda)
    {
        auto it = cache_.find(lambda);
        if (it != cache_.end()) return it->second;
        const double val = eval(lambda);
        cache_.emplace(lambda, val);
        return val;
    }

    size_t evaluations() const { return cache_.size(); }

private:
    double eval(double lambda) const
    {
        const Eigen::VectorXcd fz = f_.cast<std::complex<double>>();
        const std::complex<double> plus = pairing(Branch::plus, lambda, fz);
        if (use_conj_) {
            // real f, g: <R- f, g> = conj(<R+ f, g>), so the difference is 2i Im<R+ f, g>
            return plus.imag();
        }
        const std::complex<double> minus = pairing(Branch::minus, lambda, fz);
        return ((plus - minus) / std::complex<double>(0.0, 2.0)).real();
    }

    std::complex<double> pairing(Branch b, double lambda, const Eigen::VectorXcd& fz) const
    {
        const KernelOperator r0 = free_resolvent_operator(b, lambda, pot_.grid);
        Eigen::VectorXcd rf = r0.m * fz;
        if (!pot_.zero) {
            const KernelOperator M = m_operator(b, lambda, pot_);
            Eigen::PartialPivLU<Eigen::MatrixXcd> lu(M.m);
            const Eigen::VectorXcd vz = pot_.v.cast<std::complex<double>>();
            const Eigen::VectorXcd y = lu.solve(vz.cwiseProduct(rf).eval());
            rf -= r0.m * vz.cwiseProduct(y).matrix();
        }
        return pot_.grid->inner(rf, g_.cast<std::complex<double>>());
    }

    const SampledPotential& pot_;
    Eigen::VectorXd f_, g_;
    bool use_conj_;
    std::map<double, double> cache_;
};

std::vector<DecayRow> spectral_rows(PairingTable& table, const EvolutionConfig& cfg,
                                    double lambda_max)
{
    // I(t) = (1/(pi i)) int e^{it lam^2} lam W(lam) <[R+ - R-]f, g> dlam
    //      = (2/pi) int e^{it lam^2} lam W(lam) p(lam) dlam  with p = Im<R+f,g>
    const auto amplitude = [&](double lam) -> Complex {
        const double w = chi2(lam / lambda_max).value;
        if (w == 0.0) return {0.0, 0.0};
        return Complex((2.0 / M_PI) * lam * w * table(lam), 0.0);
    };
    OscQuadOptions opts = cfg.quadrature;
    opts.throw_on_nonconvergence = false;
    std::vector<DecayRow> rows;
    rows.reserve(cfg.t_list.size());
    for (double t : cfg.t_list) {
        const OscQuadResult q = oscillatory_quadrature(amplitude, 2.0 * lambda_max, t, opts);
        rows.push_back({t, std::abs(q.value), q.converged});
    }
    return rows;
}

} // namespace

DecayReport spectral_evolution(const SampledPotential& pot, const EvolutionConfig& cfg)
{
    cfg.validate();
    const Eigen::VectorXd f = normalized_bump(*pot.grid, cfg.f);
    const Eigen::VectorXd g = normalized_bump(*pot.grid, cfg.g);
    PairingTable table(pot, f, g, cfg.use_conjugation);

    DecayReport rep;
    rep.method_tag = "spectral";
    rep.rows = spectral_rows(table, cfg, cfg.lambda_max);
    if (cfg.check_tail) {
        const std::vector<DecayRow> wide = spectral_rows(table, cfg, 2.0 * cfg.lambda_max);
        double worst = 0;
        for (size_t k = 0; k < rep.rows.size(); ++k) {
            const double base = std::abs(rep.rows[k].value);
            if (base > 0) worst = std::max(worst, std::abs(wide[k].value - rep.rows[k].value) / base);
        }
        rep.tail_fraction = worst;
    }
    const FitResult fit = decay_fit(rep.rows);
    rep.fitted_exponent = fit.slope;
    rep.exponent_ci = fit.ci;
    rep.rows_excluded = fit.excluded;
    return rep;
}

LatticeOracle::LatticeOracle(const PotentialSpec& pot, const EvolutionConfig& cfg)
{
    cfg.validate();
    h_ = cfg.lattice.spacing;
    half_width_ = cfg.lattice.half_width;
    interior_ = cfg.lattice.interior_window;
    lambda_max_ = cfg.lambda_max;
    const int m = static_cast<int>(std::lround(2.0 * half_width_ / h_));
    const int n = m * m;
    if (n > cfg.lattice.dense_cap)
        throw ConfigError("lattice: " + std::to_string(n) + " sites exceeds the dense cap "
                          + std::to_string(cfg.lattice.dense_cap) + "; use a coarser spacing h");

    pts_.reserve(n);
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            pts_.emplace_back(-half_width_ + (i + 0.5) * h_, -half_width_ + (j + 0.5) * h_);

    Eigen::MatrixXd H = Eigen::MatrixXd::Zero(n, n);
    const double inv_h2 = 1.0 / (h_ * h_);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            const int idx = i * m + j;
            H(idx, idx) = 4.0 * inv_h2 + pot.value(pts_[idx]);
            if (i + 1 < m) H(idx, idx + m) = -inv_h2;
            if (i > 0) H(idx, idx - m) = -inv_h2;
            if (j + 1 < m) H(idx, idx + 1) = -inv_h2;
            if (j > 0) H(idx, idx - 1) = -inv_h2;
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
    if (eig.info() != Eigen::Success) throw NumericalError("lattice: eigendecomposition failed");
    evals_ = eig.eigenvalues();
    evecs_ = eig.eigenvectors();

    f_.resize(n);
    g_.resize(n);
    for (int k = 0; k < n; ++k) {
        f_[k] = cfg.f.value(pts_[k]);
        g_[k] = cfg.g.value(pts_[k]);
    }
    f_ /= f_.cwiseAbs().sum() * h_ * h_;
    g_ /= g_.cwiseAbs().sum() * h_ * h_;
    coef_ = evecs_.transpose() * f_;
    coef_g_ = evecs_.transpose() * g_;

    filter_.resize(n);
    for (int k = 0; k < n; ++k) {
        filter_[k] = evals_[k] >= 0
            ? chi2(std::sqrt(evals_[k]) / lambda_max_).value
            : 0.0;
    }
}

Eigen::VectorXcd LatticeOracle::evolve(double t, bool project_ac, bool apply_filter) const
{
    const int n = static_cast<int>(f_.size());
    Eigen::VectorXcd amps(n);
    for (int k = 0; k < n; ++k) {
        double c = coef_[k];
        if (project_ac && evals_[k] < 0) c = 0;
        if (apply_filter) c *= evals_[k] >= 0 ? chi2(std::sqrt(std::max(evals_[k], 0.0)) / lambda_max_).value
                                              : 1.0;
        const double ph = t * evals_[k];
        amps[k] = c * Complex(std::cos(ph), std::sin(ph));
    }
    return evecs_.cast<Complex>() * amps;
}

double LatticeOracle::bound_state_component() const
{
    double acc = 0;
    for (int k = 0; k < evals_.size(); ++k)
        if (evals_[k] < 0) acc += coef_[k] * coef_[k];
    return std::sqrt(acc) * h_;   // L2 norm carries the lattice measure
}

double LatticeOracle::filtered_pairing(double t) const
{
    Complex acc(0, 0);
    for (int k = 0; k < evals_.size(); ++k) {
        if (evals_[k] < 0) continue;
        const double ph = t * evals_[k];
        acc += filter_[k] * coef_[k] * coef_g_[k] * Complex(std::cos(ph), std::sin(ph));
    }
    return std::abs(acc) * h_ * h_;
}

double LatticeOracle::l2_norm(const Eigen::VectorXcd& u) const
{
    return std::sqrt(u.squaredNorm()) * h_;
}

DecayReport LatticeOracle::decay(const std::vector<double>& t_list) const
{
    const double win = interior_ * half_width_;
    std::vector<int> keep;
    for (size_t k = 0; k < pts_.size(); ++k)
        if (pts_[k].norm() <= win) keep.push_back(static_cast<int>(k));

    DecayReport rep;
    rep.method_tag = "lattice";
    for (double t : t_list) {
        const Eigen::VectorXcd u = evolve(t, true, true);
        double sup = 0;
        for (int idx : keep) sup = std::max(sup, std::abs(u[idx]));
        rep.rows.push_back({t, sup, true});
    }
    const FitResult fit = decay_fit(rep.rows);
    rep.fitted_exponent = fit.slope;
    rep.exponent_ci = fit.ci;
    rep.rows_excluded = fit.excluded;
    return rep;
}

double free_kernel_modulus(double t)
{
    if (t == 0) throw ConfigError("free_kernel_modulus: t must be nonzero");
    return 1.0 / (4.0 * M_PI * std::abs(t));
}

Eigen::VectorXcd free_evolve(const std::vector<Vec2>& src, const Eigen::VectorXd& w,
                             const Eigen::VectorXcd& f, double t, const std::vector<Vec2>& targets)
{
    if (static_cast<Eigen::Index>(src.size()) != f.size() || f.size() != w.size())
        throw ConfigError("free_evolve: source size mismatch");
    if (t == 0) {
        if (targets.size() != src.size())
            throw ConfigError("free_evolve: t = 0 identity needs matching target nodes");
        return f;
    }
    const Complex pref = 1.0 / (Complex(0, 4.0 * M_PI * t));
    Eigen::VectorXcd u(targets.size());
    const double inv4t = 1.0 / (4.0 * t);
    for (size_t ix = 0; ix < targets.size(); ++ix) {
        Complex acc(0, 0);
        for (size_t j = 0; j < src.size(); ++j) {
            const double ph = (targets[ix] - src[j]).squaredNorm() * inv4t;
            acc += Complex(std::cos(ph), std::sin(ph)) * f[static_cast<Eigen::Index>(j)]
                * w[static_cast<Eigen::Index>(j)];
        }
        u[static_cast<Eigen::Index>(ix)] = pref * acc;
    }
    return u;
}

DecayReport free_evolution_decay(const Grid& grid, const BumpSpec& bump,
                                 const std::vector<double>& t_list)
{
    const Eigen::VectorXd f = normalized_bump(grid, bump);
    DecayReport rep;
    rep.method_tag = "free";
    for (double t : t_list) {
        const Eigen::VectorXcd u =
            free_evolve(grid.nodes(), grid.weights(), f.cast<Complex>(), t, grid.nodes());
        rep.rows.push_back({t, u.cwiseAbs().maxCoeff(), true});
    }
    const FitResult fit = decay_fit(rep.rows);
    rep.fitted_exponent = fit.slope;
    rep.exponent_ci = fit.ci;
    rep.rows_excluded = fit.excluded;
    return rep;
}

} // namespace disp2d
