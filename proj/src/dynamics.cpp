#include "axicyl/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "axicyl/elliptic.hpp"
#include "axicyl/error.hpp"

namespace axicyl {

namespace {

ScalarField even_zero_at_wall(const ScalarField& f) { return f.retagged(Parity::even, OuterBc::dirichlet); }

ScalarField even_free(const ScalarField& f) { return f.retagged(Parity::even, OuterBc::free); }

void require_finite(const ScalarField& f, const char* name, double t) {
    if (!f.all_finite()) {
        std::ostringstream msg;
        msg << name << " became non-finite in the step from t=" << t;
        throw Error(ErrorKind::numerical_failure, msg.str());
    }
}

}  // namespace

const char* to_string(TimeScheme scheme) { return scheme == TimeScheme::imex ? "imex" : "rk4"; }

TimeScheme parse_time_scheme(const std::string& name) {
    if (name == "imex") return TimeScheme::imex;
    if (name == "rk4") return TimeScheme::rk4;
    throw Error(ErrorKind::config_error, "unknown time scheme '" + name + "'");
}

Velocity reconstruct_velocity(const ScalarField& psi1) {
    Velocity v;
    v.v_r = scale_by_r(d_z(psi1), 1) * -1.0;
    v.v_r = v.v_r.retagged(Parity::odd, psi1.bc() == OuterBc::dirichlet ? OuterBc::dirichlet : OuterBc::free);
    ScalarField vz = scale_by_r(d_r(psi1), 1);
    vz = even_free(vz);
    vz.axpy(2.0, even_free(psi1));
    v.v_z = vz;
    return v;
}

MeridianVorticity reconstruct_vorticity(const ScalarField& u) {
    MeridianVorticity w;
    w.omega_r = scale_by_r(d_z(u), -1) * -1.0;
    w.omega_r = w.omega_r.retagged(Parity::odd, u.bc() == OuterBc::dirichlet ? OuterBc::dirichlet : OuterBc::free);
    w.omega_z = even_free(scale_by_r(d_r(u), -1));
    return w;
}

ScalarField divergence(const Velocity& v) {
    ScalarField out = even_free(d_r(v.v_r));
    out.axpy(1.0, even_free(d_z(v.v_z)));
    out.axpy(1.0, even_free(scale_by_r(v.v_r, -1)));
    return out;
}

ScalarField State::swirl() const { return even_zero_at_wall(scale_by_r(u1, 2)); }

ScalarField State::phi() const { return even_zero_at_wall(d_z(u1) * -1.0); }

State make_state(double t, const ScalarField& u1, const ScalarField& omega1) {
    State s;
    s.t = t;
    s.u1 = even_zero_at_wall(u1);
    s.omega1 = even_zero_at_wall(omega1);
    SolveResult sol = solve_with_residual({EllipticKind::stream_ratio, s.omega1});
    s.psi1 = even_zero_at_wall(sol.solution);
    s.constraint_residual = sol.residual;
    Velocity v = reconstruct_velocity(s.psi1);
    s.v_r = std::move(v.v_r);
    s.v_z = std::move(v.v_z);
    return s;
}

Forcing Forcing::none(const GridPtr& grid) {
    Forcing f;
    const auto zero = [grid](double) { return ScalarField(grid, Parity::even, OuterBc::dirichlet); };
    f.f1 = zero;
    f.F1 = zero;
    f.steady = true;
    return f;
}

Forcing Forcing::steady_fields(ScalarField f1, ScalarField F1) {
    require_same_grid(f1, F1);
    Forcing f;
    f.f1 = [a = even_zero_at_wall(f1)](double) { return a; };
    f.F1 = [b = even_zero_at_wall(F1)](double) { return b; };
    f.steady = true;
    return f;
}

ForcingFields expand_forcing(const Forcing& forcing, double t) {
    ForcingFields out;
    out.f1 = even_zero_at_wall(forcing.f1(t));
    out.F1 = even_zero_at_wall(forcing.F1(t));
    require_same_grid(out.f1, out.F1);
    out.f0 = even_zero_at_wall(scale_by_r(out.f1, 2));
    out.f_phi = scale_by_r(out.f1, 1);

    ScalarField chi1 = out.F1.max_abs() == 0.0 ? out.F1.zeros_like()
                                               : solve({EllipticKind::stream_ratio, out.F1});
    Velocity meridian = reconstruct_velocity(even_zero_at_wall(chi1));
    out.f_r = std::move(meridian.v_r);
    out.f_z = std::move(meridian.v_z);

    const ScalarField f1_z = d_z(out.f1);
    out.curl_r = scale_by_r(f1_z, 1) * -1.0;
    ScalarField cz = even_free(scale_by_r(d_r(out.f1), 1));
    cz.axpy(2.0, even_free(out.f1));
    out.curl_z = cz;
    out.phi_source = even_zero_at_wall(f1_z * -1.0);
    return out;
}

Tendency rhs_small_data(const State& state, const Forcing& forcing, const DynamicsOptions& options) {
    const ScalarField f1 = even_free(forcing.f1(state.t));
    const ScalarField F1 = even_free(forcing.F1(state.t));

    ScalarField du1 = even_free(laplace_mod(state.u1)) * options.nu;
    du1.axpy(1.0, f1);
    ScalarField dw1 = even_free(laplace_mod(state.omega1)) * options.nu;
    dw1.axpy(1.0, F1);

    if (options.nonlinear) {
        du1.axpy(-1.0, even_free(advect(state.v_r, state.v_z, state.u1, options.advection)));
        du1.axpy(2.0, even_free(state.u1 * d_z(state.psi1)));
        dw1.axpy(-1.0, even_free(advect(state.v_r, state.v_z, state.omega1, options.advection)));
        dw1.axpy(2.0, even_free(state.u1 * d_z(state.u1)));
    }
    return {du1, dw1};
}

namespace {

State step_imex(const State& s, double dt, const Forcing& forcing, const DynamicsOptions& o) {
    ScalarField eu = even_free(s.u1);
    ScalarField ew = even_free(s.omega1);
    eu.axpy(dt, even_free(forcing.f1(s.t)));
    ew.axpy(dt, even_free(forcing.F1(s.t)));
    if (o.nonlinear) {
        eu.axpy(-dt, even_free(advect(s.v_r, s.v_z, s.u1, o.advection)));
        eu.axpy(2.0 * dt, even_free(s.u1 * d_z(s.psi1)));
        ew.axpy(-dt, even_free(advect(s.v_r, s.v_z, s.omega1, o.advection)));
        ew.axpy(2.0 * dt, even_free(s.u1 * d_z(s.u1)));
    }
    require_finite(eu, "u1", s.t);
    require_finite(ew, "omega1", s.t);
    const double kappa = o.nu * dt;
    ScalarField u1 = solve_shifted(ratio_operator(), eu, 1.0, kappa);
    ScalarField w1 = solve_shifted(ratio_operator(), ew, 1.0, kappa);
    return make_state(s.t + dt, u1, w1);
}

/// s + h k, stamped at time s.t + advance.
State offset(const State& s, double h, const Tendency& k, double advance) {
    ScalarField u1 = even_free(s.u1);
    ScalarField w1 = even_free(s.omega1);
    u1.axpy(h, k.du1);
    w1.axpy(h, k.domega1);
    require_finite(u1, "u1", s.t);
    require_finite(w1, "omega1", s.t);
    return make_state(s.t + advance, u1, w1);
}

State step_rk4(const State& s, double dt, const Forcing& forcing, const DynamicsOptions& o) {
    const Tendency k1 = rhs_small_data(s, forcing, o);
    const Tendency k2 = rhs_small_data(offset(s, 0.5 * dt, k1, 0.5 * dt), forcing, o);
    const Tendency k3 = rhs_small_data(offset(s, 0.5 * dt, k2, 0.5 * dt), forcing, o);
    const Tendency k4 = rhs_small_data(offset(s, dt, k3, dt), forcing, o);
    Tendency sum{k1.du1, k1.domega1};
    sum.du1.axpy(2.0, k2.du1).axpy(2.0, k3.du1).axpy(1.0, k4.du1);
    sum.domega1.axpy(2.0, k2.domega1).axpy(2.0, k3.domega1).axpy(1.0, k4.domega1);
    return offset(s, dt / 6.0, sum, dt);
}

}  // namespace

State step(const State& state, double dt, const Forcing& forcing, const DynamicsOptions& options) {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw Error(ErrorKind::invalid_argument, "time step must be positive");
    if (!(options.nu > 0.0)) throw Error(ErrorKind::invalid_argument, "viscosity must be positive");
    return options.scheme == TimeScheme::imex ? step_imex(state, dt, forcing, options)
                                              : step_rk4(state, dt, forcing, options);
}

ScalarField evolve_swirl(const ScalarField& u, const State& state, double dt, const Forcing& forcing,
                         const DynamicsOptions& options) {
    ScalarField e = even_free(u);
    e.axpy(dt, even_free(scale_by_r(forcing.f1(state.t), 2)));
    if (options.nonlinear) e.axpy(-dt, even_free(advect(state.v_r, state.v_z, even_zero_at_wall(u), options.advection)));
    require_finite(e, "swirl", state.t);
    return solve_shifted(swirl_operator(), e, 1.0, options.nu * dt);
}

PhiGamma initial_phi_gamma(const State& state) { return {state.phi(), state.omega1}; }

PhiGamma evolve_phi_gamma(const PhiGamma& pg, const State& state, double dt, const Forcing& forcing,
                          const DynamicsOptions& options) {
    const ScalarField phi = even_zero_at_wall(pg.phi);
    const ScalarField gamma = even_zero_at_wall(pg.gamma);
    ScalarField ep = even_free(phi);
    ScalarField eg = even_free(gamma);
    ep.axpy(-dt, even_free(d_z(forcing.f1(state.t))));
    eg.axpy(dt, even_free(forcing.F1(state.t)));
    if (options.nonlinear) {
        const MeridianVorticity w = reconstruct_vorticity(state.swirl());
        const ScalarField vr_over_r = even_zero_at_wall(d_z(state.psi1) * -1.0);
        ScalarField stretch = even_free(w.omega_r * d_r(vr_over_r));
        stretch.axpy(1.0, even_free(w.omega_z * d_z(vr_over_r)));
        ep.axpy(-dt, even_free(advect(state.v_r, state.v_z, phi, options.advection)));
        ep.axpy(dt, stretch);
        eg.axpy(-dt, even_free(advect(state.v_r, state.v_z, gamma, options.advection)));
        eg.axpy(-2.0 * dt, even_free(state.u1 * phi));
    }
    require_finite(ep, "Phi", state.t);
    require_finite(eg, "Gamma", state.t);
    const double kappa = options.nu * dt;
    return {solve_shifted(ratio_operator(), ep, 1.0, kappa), solve_shifted(ratio_operator(), eg, 1.0, kappa)};
}

double advective_step_limit(const State& state, double cfl) {
    const double vmax = std::max(state.v_r.max_abs(), state.v_z.max_abs());
    if (vmax == 0.0) return std::numeric_limits<double>::infinity();
    const Grid& g = state.u1.grid();
    return cfl * std::min(g.dr(), g.dz()) / vmax;
}

double diffusive_step_limit(const Grid& grid, double nu) {
    const double h = std::min(grid.dr(), grid.dz());
    return 0.15 * h * h / nu;
}

}  // namespace axicyl
