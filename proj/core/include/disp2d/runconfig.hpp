#pragma once

#include "disp2d/propagator.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace disp2d {

struct GridSpec {
    enum class Scheme { polar, cartesian };
    Scheme scheme = Scheme::polar;
    PolarScheme polar;
    CartesianScheme cartesian;

    std::shared_ptr<const Grid> build() const;
};

struct LadderSpec {
    double min = 1e-6;
    double max = 1e-3;
    int points_per_decade = 24;

    std::vector<double> build() const { return lambda_ladder(min, max, points_per_decade); }
};

struct LowEnergySection {
    double tau = -1.0;            // < 0: relative default
    LadderSpec ladder;
    LadderSpec scaling_ladder{1e-5, 1e-2, 24};
};

struct ScanSection {
    bool present = false;
    double coupling_min = 1.0;
    double coupling_max = 8.0;
    int count = 15;
};

struct RunConfig {
    PotentialSpec potential;
    GridSpec grid;
    LowEnergySection lowenergy;
    EvolutionConfig evolution;
    ScanSection scan;
    std::vector<std::string> decay_methods{"spectral", "lattice"};
    std::uint64_t seed = 0;
    std::string output_dir = "out";
    std::string config_hash;      // FNV-1a 64 of the raw config bytes, hex

    SampledPotential sample_potential() const { return build_potential(potential, grid.build()); }
};

/// Parse + validate. Unknown command sections are tolerated; missing or
/// malformed fields throw ConfigError naming the field.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

std::uint64_t fnv1a64(const std::string& bytes);
std::string hash_hex(std::uint64_t h);

} // namespace disp2d
