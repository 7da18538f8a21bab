/// @file dynamics.hpp
/// @brief Time stepping of the swirl-ratio / vorticity-ratio system and of
/// the secondary (swirl, Phi, Gamma) formulation, plus field reconstruction.
///
/// Unknowns: u1 = v_phi / r, omega1 = omega_phi / r, psi1 = psi / r.
///   u1_t + v.grad u1 - nu (lap + (2/r) d_r) u1 = 2 u1 psi1_z + f1
///   omega1_t + v.grad omega1 - nu (lap + (2/r) d_r) omega1 = 2 u1 u1_z + F1
///   -(lap + (2/r) d_r) psi1 = omega1
/// with every unknown zero at r = R and periodic in z.
#pragma once

#include <cstdint>
#include <functional>
#include <string>

#include "axicyl/operators.hpp"
#include "axicyl/scalar_field.hpp"

namespace axicyl {

enum class TimeScheme { imex, rk4 };

const char* to_string(TimeScheme scheme);
TimeScheme parse_time_scheme(const std::string& name);

struct DynamicsOptions {
    double nu = 1.0;
    TimeScheme scheme = TimeScheme::imex;
    Advection advection = Advection::centered;
    /// false drops advection and the quadratic source terms.
    bool nonlinear = true;
};

struct Velocity {
    ScalarField v_r;  ///< odd, zero at R
    ScalarField v_z;  ///< even
};

struct MeridianVorticity {
    ScalarField omega_r;  ///< odd
    ScalarField omega_z;  ///< even
};

/// v_r = -r psi1_z, v_z = r psi1_r + 2 psi1.
Velocity reconstruct_velocity(const ScalarField& psi1);
/// omega_r = -u_z / r, omega_z = u_r / r for the swirl u = r v_phi.
MeridianVorticity reconstruct_vorticity(const ScalarField& u);
/// v_r,r + v_z,z + v_r / r at every node.
ScalarField divergence(const Velocity& v);

struct State {
    double t = 0.0;
    ScalarField u1;
    ScalarField omega1;
    ScalarField psi1;
    ScalarField v_r;
    ScalarField v_z;
    /// Relative residual of the last stream-ratio solve.
    double constraint_residual = 0.0;

    /// r^2 u1
    ScalarField swirl() const;
    /// -d_z u1, which equals omega_r / r.
    ScalarField phi() const;
};

/// Builds a state from u1 and omega1: solves for psi1 and reconstructs v.
/// Both inputs are retagged even with a zero at R.
State make_state(double t, const ScalarField& u1, const ScalarField& omega1);

/// Swirl-ratio and vorticity-ratio sources as functions of time.
struct Forcing {
    std::function<ScalarField(double)> f1;
    std::function<ScalarField(double)> F1;
    /// Set when both sources are independent of time.
    bool steady = true;

    /// No forcing. The functions return zero fields on the given grid.
    static Forcing none(const GridPtr& grid);
    static Forcing steady_fields(ScalarField f1, ScalarField F1);
};

/// Every forcing quantity derived from (f1, F1) at one instant.
struct ForcingFields {
    ScalarField f1;
    ScalarField F1;
    ScalarField f0;      ///< r^2 f1, the swirl source
    ScalarField f_phi;   ///< r f1
    ScalarField f_r;     ///< meridian force, -r chi1_z
    ScalarField f_z;     ///< meridian force, r chi1_r + 2 chi1
    ScalarField curl_r;  ///< -r f1_z
    ScalarField curl_z;  ///< 2 f1 + r f1_r
    ScalarField phi_source;  ///< curl_r / r = -f1_z
};

/// Expands the forcing at time t. The meridian force is the divergence-free
/// field whose azimuthal curl is r F1.
ForcingFields expand_forcing(const Forcing& forcing, double t);

struct Tendency {
    ScalarField du1;
    ScalarField domega1;
};

/// Full right-hand sides of the u1 and omega1 equations (diffusion by laplace_mod).
Tendency rhs_small_data(const State& state, const Forcing& forcing, const DynamicsOptions& options);

/// One step. IMEX: backward Euler on the diffusion, forward Euler on the
/// rest. RK4: classical explicit Runge-Kutta on rhs_small_data.
/// Throws Error(numerical_failure) on non-finite output.
State step(const State& state, double dt, const Forcing& forcing, const DynamicsOptions& options);

/// One backward-Euler / forward-Euler step of
///   u_t + v.grad u - nu (lap - (2/r) d_r) u = r^2 f1
/// with the velocity of `state`.
ScalarField evolve_swirl(const ScalarField& u, const State& state, double dt, const Forcing& forcing,
                         const DynamicsOptions& options);

struct PhiGamma {
    ScalarField phi;
    ScalarField gamma;
};

/// Consistent data: Phi = -u1_z, Gamma = omega1.
PhiGamma initial_phi_gamma(const State& state);

/// One IMEX step of
///   Phi_t + v.grad Phi - nu (lap + (2/r) d_r) Phi - (omega_r d_r + omega_z d_z)(v_r / r) = -f1_z
///   Gamma_t + v.grad Gamma - nu (lap + (2/r) d_r) Gamma + 2 u1 Phi = F1
/// with velocity and swirl from `state`.
PhiGamma evolve_phi_gamma(const PhiGamma& pg, const State& state, double dt, const Forcing& forcing,
                          const DynamicsOptions& options);

/// Largest stable advective step: cfl * min(dr, dz) / max |v|; infinity when v = 0.
double advective_step_limit(const State& state, double cfl);
/// Explicit diffusion limit used by RK4: 0.15 min(dr, dz)^2 / nu.
double diffusive_step_limit(const Grid& grid, double nu);

}  // namespace axicyl
