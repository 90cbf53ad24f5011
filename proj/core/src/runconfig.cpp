#include "disp2d/runconfig.hpp"
#include "disp2d/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>

namespace disp2d {

using nlohmann::json;

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& why)
{
    throw ConfigError("config field '" + field + "': " + why);
}

double need_positive(const json& j, const std::string& field, double v)
{
    (void)j;
    if (!(v > 0)) bad(field, "must be > 0");
    return v;
}

PotentialSpec parse_potential(const json& j)
{
    PotentialSpec p;
    if (!j.contains("family")) bad("potential.family", "missing");
    const std::string fam = j.at("family").get<std::string>();
    if (fam == "gaussian") p.family = PotentialSpec::Family::gaussian;
    else if (fam == "disk-indicator") p.family = PotentialSpec::Family::disk_indicator;
    else if (fam == "smooth-bump") p.family = PotentialSpec::Family::smooth_bump;
    else if (fam == "two-well-signed") p.family = PotentialSpec::Family::two_well_signed;
    else if (fam == "radial-table") p.family = PotentialSpec::Family::radial_table;
    else bad("potential.family", "unknown family '" + fam + "'");

    p.amplitude = j.value("amplitude", 1.0);
    p.length_scale = need_positive(j, "potential.length_scale", j.value("length_scale", 1.0));
    p.beta_claimed = j.value("beta_claimed", 4.0);
    if (j.contains("centers")) {
        for (const auto& c : j.at("centers")) {
            if (!c.is_array() || c.size() != 2) bad("potential.centers", "entries must be [x, y]");
            p.centers.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
    }
    if (j.contains("radial_table")) {
        for (const auto& row : j.at("radial_table")) {
            if (!row.is_array() || row.size() != 2) bad("potential.radial_table", "entries must be [r, V]");
            p.radial_table.emplace_back(row[0].get<double>(), row[1].get<double>());
        }
    }
    return p;
}

GridSpec parse_grid(const json& j)
{
    GridSpec g;
    const std::string scheme = j.value("scheme", "polar");
    if (scheme == "polar") {
        g.scheme = GridSpec::Scheme::polar;
        g.polar.n_r = j.value("n_r", 16);
        g.polar.n_theta = j.value("n_theta", 16);
        g.polar.r_max = j.value("r_max", 8.0);
        g.polar.r_min_factor = j.value("r_min_factor", 1e-3);
        if (g.polar.n_r < 8) bad("grid.n_r", "must be >= 8");
        if (g.polar.n_theta < 8) bad("grid.n_theta", "must be >= 8");
        if (!(g.polar.r_max > 0)) bad("grid.r_max", "must be > 0");
    } else if (scheme == "cartesian") {
        g.scheme = GridSpec::Scheme::cartesian;
        g.cartesian.n = j.value("n", 20);
        g.cartesian.half_width = j.value("half_width", 5.0);
        if (g.cartesian.n < 8) bad("grid.n", "must be >= 8");
        if (!(g.cartesian.half_width > 0)) bad("grid.half_width", "must be > 0");
    } else {
        bad("grid.scheme", "unknown scheme '" + scheme + "'");
    }
    return g;
}

LadderSpec parse_ladder(const json& j, const std::string& where, LadderSpec def)
{
    LadderSpec l = def;
    l.min = j.value("min", l.min);
    l.max = j.value("max", l.max);
    l.points_per_decade = j.value("points_per_decade", l.points_per_decade);
    if (!(l.min > 0) || !(l.max > l.min)) bad(where, "need 0 < min < max");
    if (l.points_per_decade < 2) bad(where + ".points_per_decade", "must be >= 2");
    return l;
}

std::vector<double> parse_t_list(const json& j)
{
    std::vector<double> out;
    if (j.is_array()) {
        for (const auto& v : j) out.push_back(v.get<double>());
    } else if (j.is_object()) {
        const double lo = j.value("min", 5.0), hi = j.value("max", 50.0);
        const int count = j.value("count", 12);
        if (!(lo > 0) || !(hi > lo)) bad("evolution.t_list", "need 0 < min < max");
        if (count < 2) bad("evolution.t_list.count", "must be >= 2");
        for (int k = 0; k < count; ++k)
            out.push_back(lo * std::pow(hi / lo, double(k) / (count - 1)));
    } else {
        bad("evolution.t_list", "must be an array or {min, max, count}");
    }
    return out;
}

BumpSpec parse_bump(const json& j, const std::string& where)
{
    BumpSpec b;
    if (j.contains("center")) {
        const auto& c = j.at("center");
        if (!c.is_array() || c.size() != 2) bad(where + ".center", "must be [x, y]");
        b.center = Vec2(c[0].get<double>(), c[1].get<double>());
    }
    b.width = j.value("width", 1.25);
    if (!(b.width > 0)) bad(where + ".width", "must be > 0");
    return b;
}

EvolutionConfig parse_evolution(const json& j)
{
    EvolutionConfig e;
    if (j.contains("t_list")) e.t_list = parse_t_list(j.at("t_list"));
    else e.t_list = parse_t_list(json{{"min", 5.0}, {"max", 50.0}, {"count", 12}});
    e.lambda1 = j.value("lambda1", 0.05);
    e.lambda_max = j.value("lambda_max", 0.30);
    if (!(e.lambda1 > 0)) bad("evolution.lambda1", "must be > 0");
    if (!(e.lambda_max >= e.lambda1)) bad("evolution.lambda_max", "must be >= lambda1");
    e.chi = CutoffFamily::low_pass_at(e.lambda1);
    e.born_terms = j.value("born_terms", 6);
    if (e.born_terms < 0) bad("evolution.born_terms", "must be >= 0");
    if (j.contains("f")) e.f = parse_bump(j.at("f"), "evolution.f");
    if (j.contains("g")) e.g = parse_bump(j.at("g"), "evolution.g");
    if (j.contains("quadrature")) {
        const auto& q = j.at("quadrature");
        e.quadrature.rel_tol = q.value("rel_tol", e.quadrature.rel_tol);
        e.quadrature.max_refinements = q.value("max_refinements", e.quadrature.max_refinements);
        e.quadrature.initial_panels = q.value("initial_panels", e.quadrature.initial_panels);
        e.quadrature.geometric_panels = q.value("geometric_panels", e.quadrature.geometric_panels);
        if (!(e.quadrature.rel_tol > 0)) bad("evolution.quadrature.rel_tol", "must be > 0");
    }
    if (j.contains("lattice")) {
        const auto& l = j.at("lattice");
        e.lattice.half_width = l.value("half_width", e.lattice.half_width);
        e.lattice.spacing = l.value("spacing", e.lattice.spacing);
        e.lattice.dense_cap = l.value("dense_cap", e.lattice.dense_cap);
        e.lattice.interior_window = l.value("interior_window", e.lattice.interior_window);
        if (!(e.lattice.half_width > 0)) bad("evolution.lattice.half_width", "must be > 0");
        if (!(e.lattice.spacing > 0)) bad("evolution.lattice.spacing", "must be > 0");
    }
    e.check_tail = j.value("check_tail", false);
    e.use_conjugation = j.value("use_conjugation", true);
    e.validate();
    return e;
}

} // namespace

std::shared_ptr<const Grid> GridSpec::build() const
{
    return scheme == Scheme::polar ? Grid::polar(polar) : Grid::cartesian(cartesian);
}

RunConfig parse_run_config(const std::string& text)
{
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("config is not valid JSON: ") + e.what());
    }
    RunConfig cfg;
    if (!j.contains("potential")) bad("potential", "missing section");
    cfg.potential = parse_potential(j.at("potential"));
    if (j.contains("grid")) cfg.grid = parse_grid(j.at("grid"));
    if (j.contains("lowenergy")) {
        const auto& l = j.at("lowenergy");
        cfg.lowenergy.tau = l.value("tau", -1.0);
        if (l.contains("lambda_ladder"))
            cfg.lowenergy.ladder = parse_ladder(l.at("lambda_ladder"), "lowenergy.lambda_ladder",
                                                cfg.lowenergy.ladder);
        if (l.contains("scaling_ladder"))
            cfg.lowenergy.scaling_ladder = parse_ladder(l.at("scaling_ladder"),
                                                        "lowenergy.scaling_ladder",
                                                        cfg.lowenergy.scaling_ladder);
    }
    if (j.contains("evolution")) cfg.evolution = parse_evolution(j.at("evolution"));
    if (j.contains("scan")) {
        const auto& s = j.at("scan");
        cfg.scan.coupling_min = s.value("coupling_min", 1.0);
        cfg.scan.coupling_max = s.value("coupling_max", 8.0);
        cfg.scan.count = s.value("count", 15);
        if (!(cfg.scan.coupling_min > 0) || !(cfg.scan.coupling_max > cfg.scan.coupling_min))
            bad("scan", "need 0 < coupling_min < coupling_max");
        if (cfg.scan.count < 3) bad("scan.count", "must be >= 3");
    }
    if (j.contains("decay_methods")) {
        cfg.decay_methods.clear();
        for (const auto& m : j.at("decay_methods")) {
            const std::string name = m.get<std::string>();
            if (name != "spectral" && name != "lattice" && name != "free")
                bad("decay_methods", "unknown method '" + name + "'");
            cfg.decay_methods.push_back(name);
        }
        if (cfg.decay_methods.empty()) bad("decay_methods", "must not be empty");
    }
    cfg.seed = j.value("seed", std::uint64_t{0});
    cfg.output_dir = j.value("output_dir", std::string("out"));
    cfg.config_hash = hash_hex(fnv1a64(text));
    return cfg;
}

RunConfig load_run_config(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot open config file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_run_config(ss.str());
}

std::uint64_t fnv1a64(const std::string& bytes)
{
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string hash_hex(std::uint64_t h)
{
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

} // namespace disp2d
