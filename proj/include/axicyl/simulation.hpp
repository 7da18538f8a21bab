/// @file simulation.hpp
/// @brief Initial-condition and forcing presets, the monitored quantities
/// recorded at every step, and the time loop that produces a Trajectory.
#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "axicyl/dynamics.hpp"

namespace axicyl {

/// zero; single_mode: A cos(pi z/a)(1 - (r/R)^2)^2; random: seeded low modes.
enum class Preset { zero, single_mode, random };

const char* to_string(Preset p);
Preset parse_preset(const std::string& name);

struct PresetSpec {
    Preset preset = Preset::zero;
    double amplitude = 0.0;
    std::uint64_t seed = 0;
};

/// u1 and omega1 at t = 0. single_mode puts the sine partner of the u1
/// profile into omega1 so the meridian flow is not trivial.
State make_initial_state(const GridPtr& grid, const PresetSpec& spec);
/// Steady forcing with the same profiles as the initial presets.
Forcing make_forcing(const GridPtr& grid, const PresetSpec& spec);

/// Scalars recorded at one instant. Squared norms are suffixed _sq.
struct Sample {
    double t = 0.0;
    double dt = 0.0;
    double kinetic_sq = 0.0;          ///< |v|_2^2 with v = (v_r, r u1, v_z)
    double dissipation_sq = 0.0;      ///< |grad v_r|^2 + |grad v_phi|^2 + |grad v_z|^2
    double axis_phi_sq = 0.0;         ///< |v_r/r|^2 + |v_phi/r|^2
    double axis_z_sq = 0.0;           ///< |v_r/r|^2 + |v_z/r|^2
    double force_l2 = 0.0;            ///< |f|_2 with f = (f_r, f_phi, f_z)
    double f0_sup = 0.0;
    double f0_sq = 0.0;
    double f0_wall_l43 = 0.0;         ///< L_{4/3} norm of f0 on r = R
    double f1_sup = 0.0;
    double f_phi_l3625 = 0.0;
    double curl_r_l65 = 0.0;
    double curl_z_l65 = 0.0;
    double phi_source_l65 = 0.0;
    double gamma_source_l65 = 0.0;
    double g_forcing = 0.0;           ///< |f1|_4^4 + |F1|_2^2
    double swirl_sup = 0.0;           ///< evolved swirl u
    double ratio_swirl_sup = 0.0;     ///< r^2 u1
    double v_phi_sup = 0.0;
    double v_phi_l4_4 = 0.0;
    double v_l4_4 = 0.0;
    double v_phi_ld = 0.0;            ///< L_d norm, d from SimulationOptions
    double v_phi_l12 = 0.0;
    double uz_sq = 0.0;
    double grad_uz_sq = 0.0;
    double ur_sq = 0.0;
    double urr_sq = 0.0;
    double urz_sq = 0.0;
    double omega_r_sq = 0.0;
    double omega_z_sq = 0.0;
    double grad_omega_r_sq = 0.0;
    double grad_omega_z_sq = 0.0;
    double phi_sq = 0.0;
    double grad_phi_sq = 0.0;
    double gamma_sq = 0.0;
    double grad_gamma_sq = 0.0;
    double gamma_z_sq = 0.0;
    double interaction = 0.0;         ///< integral |u1 Phi Gamma|
    double x_small = 0.0;             ///< |u1|_4^4 + |omega1|_2^2
    double gamma_gap = 0.0;           ///< |Gamma - omega1|_inf
    double swirl_gap = 0.0;           ///< |u - r^2 u1|_inf
    double divergence_max = 0.0;
    double constraint_residual = 0.0;
};

struct SampleColumn {
    const char* name;
    const char* unit;
    double Sample::*member;
};

/// Column order, names and units of the series CSV.
const std::vector<SampleColumn>& sample_columns();

struct TimeStepPolicy {
    /// When set, dt = min(dt_max, cfl min(dr, dz) / max|v|) is recomputed every step.
    bool adaptive = true;
    double dt_max = 1e-2;
    double cfl = 0.4;
};

struct SimulationOptions {
    DynamicsOptions dynamics;
    TimeStepPolicy time_step;
    double t_end = 0.1;
    /// Snapshot every n steps; 0 disables.
    int snapshot_every = 0;
    /// Exponent of the monitored L_d norm of v_phi.
    double d_exponent = 12.0;
};

struct Snapshot {
    int step = 0;
    State state;
    ScalarField swirl;
    PhiGamma phi_gamma;
};

struct Trajectory {
    GridPtr grid;
    SimulationOptions options;
    std::vector<Sample> samples;
    std::vector<std::string> warnings;
    std::map<std::string, std::string> metadata;
    /// Fields at the final time.
    Snapshot last;

    std::vector<double> times() const;
    std::vector<double> column(double Sample::*member) const;
};

/// All monitored scalars of the current fields.
Sample measure(const State& state, const ScalarField& swirl, const PhiGamma& pg, const ForcingFields& forcing,
               double d_exponent);

/// Integrates from `initial` to options.t_end, evolving the swirl and the
/// (Phi, Gamma) pair alongside from consistent data. Throws
/// Error(numerical_failure) naming the last healthy time on blow-up.
Trajectory simulate(const State& initial, const Forcing& forcing, const SimulationOptions& options,
                    const std::function<void(const Snapshot&)>& on_snapshot = {});

}  // namespace axicyl
