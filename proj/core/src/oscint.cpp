#include "disp2d/oscint.hpp"
#include "disp2d/cutoff.hpp"
#include "disp2d/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace disp2d {

namespace {

struct Moments {
    Complex m0, m1, m2;   // int_{-1}^{1} x^k e^{i theta x} dx
};

Moments filon_moments(double th)
{
    Moments m;
    if (std::abs(th) < 0.5) {
        const double t2 = th * th;
        m.m0 = 2.0 * (1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0);
        m.m1 = Complex(0, 2.0) * th
            * (1.0 / 3.0 - t2 / 30.0 + t2 * t2 / 840.0 - t2 * t2 * t2 / 45360.0);
        m.m2 = 2.0 * (1.0 / 3.0 - t2 / 10.0 + t2 * t2 / 168.0 - t2 * t2 * t2 / 6480.0);
        return m;
    }
    const double s = std::sin(th), c = std::cos(th);
    m.m0 = 2.0 * s / th;
    m.m1 = Complex(0, 2.0) * (s - th * c) / (th * th);
    m.m2 = 2.0 * ((th * th - 2.0) * s + 2.0 * th * c) / (th * th * th);
    return m;
}

// int_alpha^beta e^{it mu} g(mu) dmu with quadratic g through endpoints+midpoint
Complex filon_panel(double alpha, double beta, double t,
                    const Complex& va, const Complex& vc, const Complex& vb)
{
    const double h = beta - alpha, mc = 0.5 * (alpha + beta);
    const double th = 0.5 * t * h;
    const Moments m = filon_moments(th);
    const Complex q = va * 0.5 * (m.m2 - m.m1) + vc * (m.m0 - m.m2) + vb * 0.5 * (m.m2 + m.m1);
    return 0.5 * h * Complex(std::cos(t * mc), std::sin(t * mc)) * q;
}

} // namespace

OscQuadResult oscillatory_quadrature(const std::function<Complex(double)>& a, double Lambda,
                                     double t, const OscQuadOptions& opts)
{
    if (Lambda <= 0) throw ConfigError("oscillatory_quadrature: Lambda must be > 0");
    const double mu_top = Lambda * Lambda;
    const double lam_floor = opts.lambda_floor_factor * Lambda;
    const double mu_floor = lam_floor * lam_floor;

    // g(mu) = a(sqrt(mu)) / (2 sqrt(mu)); the lambda prefactor of a resolvent
    // amplitude cancels the Jacobian here.
    std::map<double, Complex> cache;
    const auto g = [&](double mu) -> Complex {
        auto it = cache.find(mu);
        if (it != cache.end()) return it->second;
        const double lam = std::sqrt(mu);
        const Complex val = a(lam) / (2.0 * lam);
        cache.emplace(mu, val);
        return val;
    };

    // panel edges: geometric from mu_floor, then uniform
    std::vector<double> edges;
    edges.push_back(mu_floor);
    const double mu_switch = std::max(mu_floor * 2.0, mu_top / std::max(4, opts.initial_panels));
    double mu = mu_floor;
    for (int k = 0; k < opts.geometric_panels && mu < mu_switch; ++k) {
        mu = std::min(mu * std::pow(mu_switch / mu_floor, 1.0 / opts.geometric_panels) * 1.0,
                      mu_switch);
        mu = mu_floor * std::pow(mu_switch / mu_floor, double(k + 1) / opts.geometric_panels);
        edges.push_back(mu);
    }
    const double uni_lo = edges.back();
    for (int k = 1; k <= opts.initial_panels; ++k)
        edges.push_back(uni_lo + (mu_top - uni_lo) * double(k) / opts.initial_panels);

    // closure below lambda_floor: int_0^{lam_floor} a ~ a(lam_floor) * lam_floor
    const Complex closure = a(lam_floor) * lam_floor;

    const auto total = [&](const std::vector<double>& e, std::vector<Complex>& per_panel) {
        per_panel.assign(e.size() - 1, Complex(0, 0));
        Complex acc = closure;
        for (size_t k = 0; k + 1 < e.size(); ++k) {
            const double al = e[k], be = e[k + 1], mid = 0.5 * (al + be);
            per_panel[k] = filon_panel(al, be, t, g(al), g(mid), g(be));
            acc += per_panel[k];
        }
        return acc;
    };

    std::vector<Complex> per_prev, per_cur;
    Complex prev = total(edges, per_prev);
    OscQuadResult res;
    for (int round = 1; round <= opts.max_refinements; ++round) {
        std::vector<double> fine;
        fine.reserve(edges.size() * 2);
        for (size_t k = 0; k + 1 < edges.size(); ++k) {
            fine.push_back(edges[k]);
            fine.push_back(0.5 * (edges[k] + edges[k + 1]));
        }
        fine.push_back(edges.back());
        const Complex cur = total(fine, per_cur);
        const double change = std::abs(cur - prev);
        const double scale = std::max({std::abs(cur), std::abs(prev), 1e-300});
        res.refinements = round;
        res.last_rel_change = change / scale;
        // worst panel of the coarse grid by contribution change
        double worst = -1;
        for (size_t k = 0; k + 1 < edges.size(); ++k) {
            const Complex refined = per_cur[2 * k] + per_cur[2 * k + 1];
            const double d = std::abs(refined - per_prev[k]);
            if (d > worst) {
                worst = d;
                res.worst_panel_lo = edges[k];
                res.worst_panel_hi = edges[k + 1];
            }
        }
        edges = std::move(fine);
        per_prev = std::move(per_cur);
        prev = cur;
        if (res.last_rel_change <= opts.rel_tol) {
            res.value = cur;
            res.converged = true;
            return res;
        }
    }
    if (opts.throw_on_nonconvergence)
        throw NumericalError("oscillatory_quadrature: no convergence after "
                             + std::to_string(opts.max_refinements) + " refinements; worst panel mu = ["
                             + std::to_string(res.worst_panel_lo) + ", "
                             + std::to_string(res.worst_panel_hi) + "], last rel change "
                             + std::to_string(res.last_rel_change));
    res.value = prev;
    res.converged = false;
    return res;
}

OscQuadResult oscillatory_quadrature(const std::vector<double>& nodes,
                                     const std::vector<Complex>& values, double t,
                                     const OscQuadOptions& opts)
{
    if (nodes.size() != values.size() || nodes.size() < 2)
        throw ConfigError("oscillatory_quadrature: need >= 2 tabulated nodes");
    for (size_t k = 1; k < nodes.size(); ++k)
        if (nodes[k] <= nodes[k - 1]) throw ConfigError("oscillatory_quadrature: nodes must increase");
    const auto interp = [&](double lam) -> Complex {
        if (lam <= nodes.front()) return values.front();
        if (lam >= nodes.back()) return values.back();
        const auto it = std::upper_bound(nodes.begin(), nodes.end(), lam);
        const size_t k = static_cast<size_t>(it - nodes.begin());
        const double w = (lam - nodes[k - 1]) / (nodes[k] - nodes[k - 1]);
        return (1.0 - w) * values[k - 1] + w * values[k];
    };
    return oscillatory_quadrature(interp, nodes.back(), t, opts);
}

StationaryPhaseCheck lemma2_check(const Amplitude1D& a, const Phase1D& phi, double t)
{
    if (t == 0) throw ConfigError("lemma2_check: t must be nonzero");
    if (!(a.support_hi > a.support_lo)) throw ConfigError("lemma2_check: empty support");
    // precondition 1 <= phi'' (sampled); upper bound only recorded
    const int nsamp = 512;
    double slope_max = 0;
    for (int k = 0; k <= nsamp; ++k) {
        const double x = a.support_lo + (a.support_hi - a.support_lo) * k / nsamp;
        if (phi.second(x) < 1.0 - 1e-9)
            throw ConfigError("lemma2_check: phi'' < 1 at x = " + std::to_string(x));
        slope_max = std::max(slope_max, std::abs(phi.derivative(x)));
    }

    StationaryPhaseCheck out;
    out.t = t;
    out.delta = 1.0 / std::sqrt(std::abs(t));

    // lhs: panels short enough that the phase moves <= ~3 rad, Gauss-Legendre 8
    static const double gx[4] = {0.1834346424956498, 0.5255324099163290,
                                 0.7966664774136267, 0.9602898564975363};
    static const double gw[4] = {0.3626837833783620, 0.3137066458778873,
                                 0.2223810344533745, 0.1012285362903763};
    const double span = a.support_hi - a.support_lo;
    const double width = std::min(span / 16.0, 3.0 / (std::abs(t) * slope_max + 1.0));
    const int panels = std::max(16, static_cast<int>(std::ceil(span / width)));
    Complex acc(0, 0);
    for (int p = 0; p < panels; ++p) {
        const double lo = a.support_lo + span * p / panels;
        const double hi = a.support_lo + span * (p + 1) / panels;
        const double c = 0.5 * (lo + hi), h2 = 0.5 * (hi - lo);
        for (int q = 0; q < 4; ++q) {
            for (int sgn = -1; sgn <= 1; sgn += 2) {
                const double x = c + sgn * h2 * gx[q];
                const double ph = t * phi.value(x);
                acc += h2 * gw[q] * a.value(x) * Complex(std::cos(ph), std::sin(ph));
            }
        }
    }
    out.lhs = std::abs(acc);

    // rhs: delta^2 [ int |a|/(delta^2 + x^2) + int_{|x|>delta} |a'|/|x| ]
    const double d = out.delta;
    const auto seg = [&](double lo, double hi, const std::function<double(double)>& f) {
        if (hi <= lo) return 0.0;
        const int np = 256;
        double s = 0;
        for (int p = 0; p < np; ++p) {
            const double l2 = lo + (hi - lo) * p / np, h3 = lo + (hi - lo) * (p + 1) / np;
            const double c = 0.5 * (l2 + h3), hh = 0.5 * (h3 - l2);
            for (int q = 0; q < 4; ++q)
                for (int sgn = -1; sgn <= 1; sgn += 2) s += hh * gw[q] * f(c + sgn * hh * gx[q]);
        }
        return s;
    };
    const auto f1 = [&](double x) { return std::abs(a.value(x)) / (d * d + x * x); };
    const auto f2 = [&](double x) { return std::abs(a.derivative(x)) / std::abs(x); };
    double rhs = 0;
    // |x| <= delta piece of f1 resolved separately (its own scale)
    rhs += seg(std::max(a.support_lo, -d), std::min(a.support_hi, d), f1);
    rhs += seg(a.support_lo, std::min(a.support_hi, -d), f1);
    rhs += seg(std::max(a.support_lo, d), a.support_hi, f1);
    rhs += seg(a.support_lo, std::min(a.support_hi, -d), f2);
    rhs += seg(std::max(a.support_lo, d), a.support_hi, f2);
    out.rhs = d * d * rhs;
    out.ratio = out.rhs > 0 ? out.lhs / out.rhs : 0.0;
    return out;
}

double BornPhaseInstance::s() const
{
    double acc = 0;
    for (int j : J) acc += d.at(static_cast<size_t>(j - 1));
    return acc;
}

BornChainResult born_chain_integral(const BornPhaseInstance& inst, double t,
                                    const OscQuadOptions& opts_in)
{
    if (inst.m < 1 || inst.m > 3) throw ConfigError("born_chain_integral: m must be in 1..3");
    if (static_cast<int>(inst.d.size()) != inst.m)
        throw ConfigError("born_chain_integral: need m distances");
    for (double dj : inst.d)
        if (dj <= 0) throw ConfigError("born_chain_integral: distances must be > 0");
    for (int j : inst.J)
        if (j < 1 || j > inst.m) throw ConfigError("born_chain_integral: J out of range");
    if (t <= 0) throw ConfigError("born_chain_integral: t must be > 0");

    std::vector<bool> inJ(static_cast<size_t>(inst.m) + 1, false);
    for (int j : inst.J) inJ[static_cast<size_t>(j)] = true;

    const double L_eff = inst.L > 0 ? inst.L : 64.0;   // L = infinity surrogate ceiling
    const double Lambda = 2.0 * L_eff;
    const double s = inst.s();
    const double sigma = inst.phase_sign >= 0 ? 1.0 : -1.0;

    const auto amp = [&](double lam) -> Complex {
        double mag = lam * chi1(lam).value;
        if (inst.L > 0) mag *= chi2(lam / inst.L).value;
        else mag *= chi2(lam / L_eff).value;
        if (mag == 0.0) return {0.0, 0.0};
        Complex prod(mag, 0.0);
        for (int j = 1; j <= inst.m; ++j) {
            const HankelSplit sp = hankel_split(lam * inst.d[static_cast<size_t>(j - 1)], inst.y0_scale);
            prod *= inJ[static_cast<size_t>(j)] ? sp.omega_plus : sp.omega_minus;
            if (prod == Complex(0, 0)) return prod;
        }
        const double ph = sigma * lam * s;   // phase shift folded into the amplitude
        return prod * Complex(std::cos(ph), std::sin(ph));
    };

    OscQuadOptions opts = opts_in;
    opts.initial_panels = std::max(opts.initial_panels,
                                   static_cast<int>(std::lround(2.0 * (s + 1.0) * Lambda)));

    BornChainResult out;
    out.s = s;
    out.lambda0 = s / (2.0 * t);
    out.value = oscillatory_quadrature(amp, Lambda, t, opts).value;
    out.t_abs_value = t * std::abs(out.value);
    out.bound_product = 1.0;
    for (int j = 1; j <= inst.m; ++j) {
        if (!inJ[static_cast<size_t>(j)]) {
            const double dj = inst.d[static_cast<size_t>(j - 1)];
            out.bound_product *= 1.0 + (dj < 1.0 ? -std::log(dj) : 0.0);
        }
    }
    return out;
}

std::vector<NamedAmplitude> lemma2_builtin_amplitudes()
{
    std::vector<NamedAmplitude> fams;
    fams.push_back({"gaussian",
                    {[](double x) { return std::exp(-x * x); },
                     [](double x) { return -2.0 * x * std::exp(-x * x); },
                     -6.0, 6.0}});
    // off-center smooth bump: stresses the |a'|/|x| term away from the stationary point
    const double c = 1.5, w = 0.8;
    fams.push_back({"offset-bump",
                    {[=](double x) {
                         const double s = (x - c) / w;
                         return std::abs(s) < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - s * s)) : 0.0;
                     },
                     [=](double x) {
                         const double s = (x - c) / w;
                         if (std::abs(s) >= 1.0) return 0.0;
                         const double q = 1.0 - s * s;
                         return std::exp(1.0 - 1.0 / q) * (-2.0 * s / (q * q)) / w;
                     },
                     c - w, c + w}});
    fams.push_back({"two-hump",
                    {[](double x) { return x * x * std::exp(-x * x); },
                     [](double x) { return (2.0 * x - 2.0 * x * x * x) * std::exp(-x * x); },
                     -6.0, 6.0}});
    return fams;
}

Phase1D lemma2_default_phase()
{
    return {[](double x) { return x * x; },
            [](double x) { return 2.0 * x; },
            [](double) { return 2.0; }};
}

} // namespace disp2d
