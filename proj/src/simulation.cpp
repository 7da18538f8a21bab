#include "axicyl/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "axicyl/error.hpp"
#include "axicyl/modal.hpp"
#include "axicyl/norms.hpp"

namespace axicyl {

const char* to_string(Preset p) {
    switch (p) {
    case Preset::zero: return "zero";
    case Preset::single_mode: return "single-mode";
    case Preset::random: return "random";
    }
    return "zero";
}

Preset parse_preset(const std::string& name) {
    if (name == "zero") return Preset::zero;
    if (name == "single-mode") return Preset::single_mode;
    if (name == "random") return Preset::random;
    throw Error(ErrorKind::config_error, "unknown preset '" + name + "'");
}

namespace {

/// (1 - (r/R)^2)^2
Polynomial bump(double radius) {
    const double s = 1.0 / (radius * radius);
    return Polynomial({1.0, 0.0, -2.0 * s, 0.0, s * s});
}

struct PresetPair {
    ModalField first;
    ModalField second;
};

PresetPair preset_profiles(const Grid& g, const PresetSpec& spec) {
    const double a = g.half_height();
    const double amp = spec.amplitude;
    if (spec.preset == Preset::zero || amp == 0.0) return {ModalField(a, {}), ModalField(a, {})};
    const Polynomial base = bump(g.radius());
    if (spec.preset == Preset::single_mode) {
        return {ModalField(a, {{base * amp, 1, 1.0, 0.0}}), ModalField(a, {{base * amp, 1, 0.0, 1.0}})};
    }
    SeededRng rng(spec.seed);
    const double s = 1.0 / (g.radius() * g.radius());
    const auto random_field = [&] {
        std::vector<ModalTerm> terms;
        for (int m = 0; m <= 3; ++m) {
            const double c0 = rng.uniform(-1.0, 1.0);
            const double c1 = rng.uniform(-1.0, 1.0);
            const double cc = rng.uniform(-1.0, 1.0);
            const double sc = rng.uniform(-1.0, 1.0);
            terms.push_back({base * Polynomial({c0, 0.0, c1 * s}) * (0.25 * amp), m, cc, sc});
        }
        return ModalField(a, std::move(terms));
    };
    ModalField first = random_field();
    ModalField second = random_field();
    return {std::move(first), std::move(second)};
}

ScalarField sample_even(const GridPtr& grid, const ModalField& f) {
    return f.sample(grid, Parity::even, OuterBc::dirichlet);
}

double sq(const ScalarField& f) { return integrate(f * f); }

double grad_sq(const ScalarField& f) { return sq(d_r(f)) + sq(d_z(f)); }

double pow_integral(const ScalarField& f, double p) {
    return integrate(map(f, [p](double v) { return std::pow(std::abs(v), p); }));
}

}  // namespace

State make_initial_state(const GridPtr& grid, const PresetSpec& spec) {
    const PresetPair p = preset_profiles(*grid, spec);
    return make_state(0.0, sample_even(grid, p.first), sample_even(grid, p.second));
}

Forcing make_forcing(const GridPtr& grid, const PresetSpec& spec) {
    PresetSpec shifted = spec;
    shifted.seed = spec.seed ^ 0x9e3779b97f4a7c15ULL;
    const PresetPair p = preset_profiles(*grid, shifted);
    return Forcing::steady_fields(sample_even(grid, p.first), sample_even(grid, p.second));
}

const std::vector<SampleColumn>& sample_columns() {
    static const std::vector<SampleColumn> columns = {
        {"t", "T", &Sample::t},
        {"dt", "T", &Sample::dt},
        {"kinetic_sq", "L^5 T^-2", &Sample::kinetic_sq},
        {"dissipation_sq", "L^3 T^-2", &Sample::dissipation_sq},
        {"axis_phi_sq", "L^3 T^-2", &Sample::axis_phi_sq},
        {"axis_z_sq", "L^3 T^-2", &Sample::axis_z_sq},
        {"force_l2", "L^2.5 T^-2", &Sample::force_l2},
        {"f0_sup", "L^2 T^-2", &Sample::f0_sup},
        {"f0_sq", "L^7 T^-4", &Sample::f0_sq},
        {"f0_wall_l43", "L^2.75 T^-2", &Sample::f0_wall_l43},
        {"f1_sup", "T^-2", &Sample::f1_sup},
        {"f_phi_l3625", "L^3.0833 T^-2", &Sample::f_phi_l3625},
        {"curl_r_l65", "L^2.5 T^-2", &Sample::curl_r_l65},
        {"curl_z_l65", "L^2.5 T^-2", &Sample::curl_z_l65},
        {"phi_source_l65", "L^1.5 T^-2", &Sample::phi_source_l65},
        {"gamma_source_l65", "L^1.5 T^-2", &Sample::gamma_source_l65},
        {"g_forcing", "mixed", &Sample::g_forcing},
        {"swirl_sup", "L^2 T^-1", &Sample::swirl_sup},
        {"ratio_swirl_sup", "L^2 T^-1", &Sample::ratio_swirl_sup},
        {"v_phi_sup", "L T^-1", &Sample::v_phi_sup},
        {"v_phi_l4_4", "L^7 T^-4", &Sample::v_phi_l4_4},
        {"v_l4_4", "L^7 T^-4", &Sample::v_l4_4},
        {"v_phi_ld", "L^(1+3/d) T^-1", &Sample::v_phi_ld},
        {"v_phi_l12", "L^1.25 T^-1", &Sample::v_phi_l12},
        {"uz_sq", "L^5 T^-2", &Sample::uz_sq},
        {"grad_uz_sq", "L^3 T^-2", &Sample::grad_uz_sq},
        {"ur_sq", "L^5 T^-2", &Sample::ur_sq},
        {"urr_sq", "L^3 T^-2", &Sample::urr_sq},
        {"urz_sq", "L^3 T^-2", &Sample::urz_sq},
        {"omega_r_sq", "L^3 T^-2", &Sample::omega_r_sq},
        {"omega_z_sq", "L^3 T^-2", &Sample::omega_z_sq},
        {"grad_omega_r_sq", "L T^-2", &Sample::grad_omega_r_sq},
        {"grad_omega_z_sq", "L T^-2", &Sample::grad_omega_z_sq},
        {"phi_sq", "L T^-2", &Sample::phi_sq},
        {"grad_phi_sq", "L^-1 T^-2", &Sample::grad_phi_sq},
        {"gamma_sq", "L T^-2", &Sample::gamma_sq},
        {"grad_gamma_sq", "L^-1 T^-2", &Sample::grad_gamma_sq},
        {"gamma_z_sq", "L^-1 T^-2", &Sample::gamma_z_sq},
        {"interaction", "T^-3", &Sample::interaction},
        {"x_small", "mixed", &Sample::x_small},
        {"gamma_gap", "L^-1 T^-1", &Sample::gamma_gap},
        {"swirl_gap", "L^2 T^-1", &Sample::swirl_gap},
        {"divergence_max", "T^-1", &Sample::divergence_max},
        {"constraint_residual", "1", &Sample::constraint_residual},
    };
    return columns;
}

std::vector<double> Trajectory::times() const { return column(&Sample::t); }

std::vector<double> Trajectory::column(double Sample::*member) const {
    std::vector<double> out;
    out.reserve(samples.size());
    for (const Sample& s : samples) out.push_back(s.*member);
    return out;
}

Sample measure(const State& state, const ScalarField& swirl, const PhiGamma& pg, const ForcingFields& forcing,
               double d_exponent) {
    const Grid& g = state.u1.grid();
    Sample s;
    s.t = state.t;

    const ScalarField v_phi = scale_by_r(state.u1, 1);
    s.kinetic_sq = sq(state.v_r) + sq(v_phi) + sq(state.v_z);
    s.dissipation_sq = grad_sq(state.v_r) + grad_sq(v_phi) + grad_sq(state.v_z);
    const double vr_axis = sq(scale_by_r(state.v_r, -1));
    s.axis_phi_sq = vr_axis + sq(state.u1);
    s.axis_z_sq = vr_axis + sq(scale_by_r(state.v_z, -1));

    s.force_l2 = std::sqrt(sq(forcing.f_r) + sq(forcing.f_phi) + sq(forcing.f_z));
    s.f0_sup = forcing.f0.max_abs();
    s.f0_sq = sq(forcing.f0);
    double wall = 0.0;
    for (double v : trace_at_R(forcing.f0)) wall += std::pow(std::abs(v), 4.0 / 3.0);
    s.f0_wall_l43 = std::pow(wall * g.dz(), 0.75);
    s.f1_sup = forcing.f1.max_abs();
    s.f_phi_l3625 = lp_norm(forcing.f_phi, 36.0 / 25.0);
    s.curl_r_l65 = lp_norm(forcing.curl_r, 1.2);
    s.curl_z_l65 = lp_norm(forcing.curl_z, 1.2);
    s.phi_source_l65 = lp_norm(forcing.phi_source, 1.2);
    s.gamma_source_l65 = lp_norm(forcing.F1, 1.2);
    s.g_forcing = pow_integral(forcing.f1, 4.0) + sq(forcing.F1);

    const ScalarField ratio_swirl = state.swirl();
    s.swirl_sup = swirl.max_abs();
    s.ratio_swirl_sup = ratio_swirl.max_abs();
    s.v_phi_sup = v_phi.max_abs();
    s.v_phi_l4_4 = pow_integral(v_phi, 4.0);
    ScalarField speed_sq = state.v_r * state.v_r;
    speed_sq.axpy(1.0, v_phi * v_phi);
    speed_sq.axpy(1.0, state.v_z * state.v_z);
    s.v_l4_4 = integrate(speed_sq * speed_sq);
    s.v_phi_ld = lp_norm(v_phi, d_exponent);
    s.v_phi_l12 = lp_norm(v_phi, 12.0);

    const ScalarField uz = d_z(swirl);
    const ScalarField ur = d_r(swirl);
    s.uz_sq = sq(uz);
    s.grad_uz_sq = grad_sq(uz);
    s.ur_sq = sq(ur);
    s.urr_sq = sq(d_rr(swirl));
    s.urz_sq = sq(d_z(ur));

    const MeridianVorticity w = reconstruct_vorticity(swirl);
    s.omega_r_sq = sq(w.omega_r);
    s.omega_z_sq = sq(w.omega_z);
    s.grad_omega_r_sq = grad_sq(w.omega_r);
    s.grad_omega_z_sq = grad_sq(w.omega_z);

    s.phi_sq = sq(pg.phi);
    s.grad_phi_sq = grad_sq(pg.phi);
    s.gamma_sq = sq(pg.gamma);
    s.grad_gamma_sq = grad_sq(pg.gamma);
    s.gamma_z_sq = sq(d_z(pg.gamma));
    s.interaction = integrate(map(state.u1 * pg.phi * pg.gamma, [](double v) { return std::abs(v); }));

    s.x_small = pow_integral(state.u1, 4.0) + sq(state.omega1);
    s.gamma_gap = (pg.gamma - state.omega1.retagged(pg.gamma.parity(), pg.gamma.bc())).max_abs();
    s.swirl_gap = (swirl - ratio_swirl.retagged(swirl.parity(), swirl.bc())).max_abs();
    s.divergence_max = divergence({state.v_r, state.v_z}).max_abs();
    s.constraint_residual = state.constraint_residual;
    return s;
}

namespace {

void validate(const SimulationOptions& o) {
    if (!(o.dynamics.nu > 0.0)) throw Error(ErrorKind::config_error, "nu must be positive");
    if (!(o.t_end > 0.0)) throw Error(ErrorKind::config_error, "t_end must be positive");
    if (!(o.time_step.dt_max > 0.0)) throw Error(ErrorKind::config_error, "dt must be positive");
    if (!(o.time_step.cfl > 0.0)) throw Error(ErrorKind::config_error, "cfl must be positive");
    if (o.snapshot_every < 0) throw Error(ErrorKind::config_error, "snapshot cadence must be non-negative");
    if (!(o.d_exponent >= 1.0)) throw Error(ErrorKind::config_error, "d exponent must be at least 1");
}

}  // namespace

Trajectory simulate(const State& initial, const Forcing& forcing, const SimulationOptions& options,
                    const std::function<void(const Snapshot&)>& on_snapshot) {
    validate(options);
    Trajectory tr;
    tr.grid = initial.u1.grid_ptr();
    tr.options = options;
    tr.metadata["grid"] = tr.grid->descriptor();
    tr.metadata["scheme"] = to_string(options.dynamics.scheme);
    tr.metadata["advection"] = to_string(options.dynamics.advection);

    State state = initial;
    ScalarField swirl = state.swirl();
    PhiGamma pg = initial_phi_gamma(state);
    ForcingFields ff = expand_forcing(forcing, state.t);
    tr.samples.push_back(measure(state, swirl, pg, ff, options.d_exponent));
    if (on_snapshot && options.snapshot_every > 0) on_snapshot({0, state, swirl, pg});

    const TimeStepPolicy& policy = options.time_step;
    const DynamicsOptions& dyn = options.dynamics;
    int n = 0;
    while (state.t < options.t_end * (1.0 - 1e-12)) {
        double dt = policy.dt_max;
        const double advective = advective_step_limit(state, policy.cfl);
        if (policy.adaptive) {
            dt = std::min(dt, advective);
        } else if (dt > advective) {
            std::ostringstream msg;
            msg << "step " << n << ": dt=" << dt << " exceeds the advective limit " << advective;
            tr.warnings.push_back(msg.str());
        }
        if (dyn.scheme == TimeScheme::rk4) dt = std::min(dt, diffusive_step_limit(*tr.grid, dyn.nu));
        const double remaining = options.t_end - state.t;
        if (dt >= remaining * (1.0 - 1e-9)) dt = remaining;

        State next;
        try {
            next = step(state, dt, forcing, dyn);
            swirl = evolve_swirl(swirl, state, dt, forcing, dyn);
            pg = evolve_phi_gamma(pg, state, dt, forcing, dyn);
        } catch (const Error& e) {
            std::ostringstream msg;
            msg << e.what() << "; last healthy step " << n << " at t=" << state.t;
            throw Error(ErrorKind::numerical_failure, msg.str());
        }
        if (!next.u1.all_finite() || !next.omega1.all_finite() || !swirl.all_finite() || !pg.phi.all_finite() ||
            !pg.gamma.all_finite()) {
            std::ostringstream msg;
            msg << "non-finite field after step " << n + 1 << "; last healthy step " << n << " at t=" << state.t;
            throw Error(ErrorKind::numerical_failure, msg.str());
        }
        state = std::move(next);
        ++n;
        if (!forcing.steady) ff = expand_forcing(forcing, state.t);
        Sample s = measure(state, swirl, pg, ff, options.d_exponent);
        s.dt = dt;
        tr.samples.push_back(s);
        if (on_snapshot && options.snapshot_every > 0 && n % options.snapshot_every == 0) {
            on_snapshot({n, state, swirl, pg});
        }
    }
    tr.last = {n, std::move(state), std::move(swirl), std::move(pg)};
    return tr;
}

}  // namespace axicyl
