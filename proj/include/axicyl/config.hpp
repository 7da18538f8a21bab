/// @file config.hpp
/// @brief Run configuration: sectioned key-value text (INI), command-line
/// overrides and validation. The schema is documented in docs/config.md.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "axicyl/auditor.hpp"
#include "axicyl/grid.hpp"
#include "axicyl/modal.hpp"
#include "axicyl/simulation.hpp"

namespace axicyl {

struct RunConfig {
    // [grid]
    double radius = 1.0;
    double half_height = 1.0;
    int nr = 32;
    int nz = 32;
    ZScheme z_scheme = ZScheme::spectral;
    // [physics], [time]
    SimulationOptions simulation;
    // [initial], [forcing]
    PresetSpec initial{Preset::random, 1.0, family_seed};
    PresetSpec forcing{Preset::zero, 0.0, family_seed};
    // [audit]
    std::vector<std::string> audits{"all"};
    double mu = 0.5;
    ExponentChoice exponents;
    // [riccati]
    double riccati_c0 = 1.0;
    double riccati_k0 = 1e-4;
    double riccati_x0 = 1e-3;
    double riccati_t_end = 10.0;
    // [output]
    std::string output_dir = "out";

    GridPtr make_grid() const;
    std::uint64_t seed() const { return initial.seed; }
};

/// Report ids accepted by [audit] select, besides the groups "all",
/// "explicit" (pass/fail audits) and "recorded" (ratio-recorded audits).
const std::vector<std::string>& audit_ids();
bool is_explicit_audit(const std::string& id);

struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    /// "NrxNz", e.g. "64x64"
    std::optional<std::string> grid;
    std::optional<std::string> output_dir;
};

/// Throws Error(config_error) on unreadable files, unknown keys, malformed
/// values or values outside their valid windows.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& text);
void apply_overrides(RunConfig& config, const ConfigOverrides& overrides);
void validate(const RunConfig& config);
/// Canonical text form; parse_config(to_ini(c)) reproduces c.
std::string to_ini(const RunConfig& config);

}  // namespace axicyl
