#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "uavisac/ga.hpp"
#include "uavisac/pso.hpp"
#include "uavisac/scenario.hpp"

namespace uavisac {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Frozen values for the ablation baselines.
struct AblationDefaults {
    double fixed_beta = 0.5;
    double fixed_x = 500.0;
    double fixed_y = 500.0;
};

/// Radar-sweep knobs carried in the same config file.
struct RadarDefaults {
    double true_velocity = 1.5;   // m/s
    std::size_t max_delay = 64;   // samples
    bool conjugate_both = false;
};

/// Everything one config file describes. The scenario's sample period and
/// the radar wavelength feed the radar sweep.
struct LoadedConfig {
    Scenario scenario;
    ga::GaConfig ga;
    pso::PsoConfig pso;
    AblationDefaults ablation;
    RadarDefaults radar;
    std::string config_hash;  // FNV-1a of the raw file bytes, hex
};

/// Parses a flat `key = value` file (# comments, blank lines allowed).
/// Multi-valued keys (ue_position, target_position, area_bounds) take
/// comma- or space-separated numbers. tx_power_dbm is accepted in place of
/// tx_power. Unknown keys are a hard error; the scenario is validated.
LoadedConfig load_config(const std::string& path);

/// Same, from config text (hash still computed over the text).
LoadedConfig parse_config(const std::string& text);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace uavisac
