#include <Eigen/Dense>
#include <boost/math/special_functions/bessel.hpp>
#include <cmath>
#include <limits>

#include "axicyl/dynamics.hpp"
#include "axicyl/elliptic.hpp"
#include "axicyl/error.hpp"
#include "axicyl/modal.hpp"
#include "axicyl/norms.hpp"
#include "axicyl/simulation.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace axicyl;
using axicyl::testing::pi;

namespace {

SimulationOptions fixed_steps(double dt, int steps, double nu = 1.0) {
    SimulationOptions o;
    o.dynamics.nu = nu;
    o.time_step.adaptive = false;
    o.time_step.dt_max = dt;
    o.t_end = dt * steps;
    return o;
}

/// (1 - r^2)^2 cos(pi z) on the unit cylinder.
double bump(double r, double z) { return (1 - r * r) * (1 - r * r) * std::cos(pi * z); }

/// Smallest eigenvalue and its eigenvector of the radial matrix of -L for one z-mode.
std::pair<double, Eigen::VectorXd> lowest_mode(const Grid& g, int mode) {
    const Tridiagonal t = radial_matrix(ratio_operator(), g, mode);
    const int n = g.nr();
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int j = 0; j < n; ++j) {
        m(j, j) = t.diag[j];
        if (j > 0) m(j, j - 1) = t.lower[j];
        if (j + 1 < n) m(j, j + 1) = t.upper[j];
    }
    Eigen::EigenSolver<Eigen::MatrixXd> es(m);
    int best = 0;
    for (int i = 1; i < n; ++i) {
        if (es.eigenvalues()[i].real() < es.eigenvalues()[best].real()) best = i;
    }
    return {es.eigenvalues()[best].real(), es.eigenvectors().col(best).real()};
}

}  // namespace

TEST_CASE("zero state is a fixed point of both schemes") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    const State s0 = make_state(0.0, ScalarField::constant(g, 0.0), ScalarField::constant(g, 0.0));
    for (TimeScheme scheme : {TimeScheme::imex, TimeScheme::rk4}) {
        DynamicsOptions o;
        o.scheme = scheme;
        const State s1 = step(s0, 1e-3, Forcing::none(g), o);
        CHECK(s1.u1.max_abs() == 0.0);
        CHECK(s1.omega1.max_abs() == 0.0);
        CHECK(s1.t == doctest::Approx(1e-3));
    }
    CHECK(std::isinf(advective_step_limit(s0, 0.4)));
}

TEST_CASE("with zero velocity data the tendency is the forcing") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    const State s0 = make_state(0.0, ScalarField::constant(g, 0.0), ScalarField::constant(g, 0.0));
    const auto f1 = testing::random_field(g, 3);
    const auto F1 = testing::random_field(g, 4);
    const Tendency t = rhs_small_data(s0, Forcing::steady_fields(f1, F1), DynamicsOptions{});
    double e1 = 0.0;
    double e2 = 0.0;
    for (std::size_t i = 0; i < f1.size(); ++i) {
        e1 = std::max(e1, std::abs(t.du1[i] - f1[i]));
        e2 = std::max(e2, std::abs(t.domega1[i] - F1[i]));
    }
    CHECK(e1 == 0.0);
    CHECK(e2 == 0.0);
}

TEST_CASE("diffusion part of the tendency converges at second order") {
    // u1 = (1 - r^2)^2 cos(pi z), omega1 = 0: psi1 = 0 and only nu (lap + (2/r) d_r) u1 remains.
    const auto exact = [](double r, double z) {
        return ((-16 + 24 * r * r) - pi * pi * (1 - r * r) * (1 - r * r)) * std::cos(pi * z);
    };
    std::vector<double> errors;
    for (int n : {16, 32, 64}) {
        const auto g = make_grid(1.0, 1.0, n, n);
        const State s = make_state(0.0, ScalarField::sample(g, Parity::even, OuterBc::dirichlet, bump),
                                   ScalarField::constant(g, 0.0));
        CHECK(s.psi1.max_abs() <= 1e-14);
        errors.push_back(testing::max_error(rhs_small_data(s, Forcing::none(g), DynamicsOptions{}).du1, exact));
    }
    for (double order : testing::observed_orders(errors)) CHECK(order >= 1.8);
}

TEST_CASE("pure diffusion decays each radial mode by the implicit factor") {
    const auto g = make_grid(1.0, 1.0, 64, 16);
    const auto [lambda, vec] = lowest_mode(*g, 1);
    ScalarField u1(g, Parity::even, OuterBc::dirichlet);
    for (int j = 0; j < g->nr(); ++j) {
        for (int k = 0; k < g->nz(); ++k) u1(j, k) = vec[j] * std::cos(pi * g->z(k));
    }
    DynamicsOptions o;
    o.nu = 0.5;
    o.nonlinear = false;
    const double dt = 1e-3;
    State s = make_state(0.0, u1, ScalarField::constant(g, 0.0));
    const int steps = 20;
    for (int i = 0; i < steps; ++i) s = step(s, dt, Forcing::none(g), o);
    const double factor = std::pow(1.0 + o.nu * dt * lambda, -steps);
    double err = 0.0;
    for (std::size_t i = 0; i < u1.size(); ++i) err = std::max(err, std::abs(s.u1[i] - factor * u1[i]));
    CHECK(err <= 1e-6 * u1.max_abs());

    // f'' + (3/r) f' has eigenfunctions J1(k r) / r: first zero of J1 squared plus pi^2.
    const double continuous = std::pow(boost::math::cyl_bessel_j_zero(1.0, 1), 2) + pi * pi;
    CHECK(lambda == doctest::Approx(continuous).epsilon(0.01));
}

TEST_CASE("velocity and vorticity reconstruction on closed forms") {
    const auto g = make_grid(1.0, 1.0, 32, 32);
    const Velocity v = reconstruct_velocity(ScalarField::constant(g, 1.0, Parity::even, OuterBc::free));
    CHECK(v.v_r.max_abs() <= 1e-12);
    CHECK(testing::max_error(v.v_z, [](double, double) { return 2.0; }) <= 1e-12);

    const auto u = ScalarField::sample(g, Parity::even, OuterBc::free, [](double r, double) { return r * r; });
    const MeridianVorticity w = reconstruct_vorticity(u);
    CHECK(w.omega_r.max_abs() <= 1e-12);
    CHECK(testing::max_error(w.omega_z, [](double, double) { return 2.0; }) <= 1e-10);
}

TEST_CASE("discrete divergence of the reconstructed velocity is second order") {
    const auto psi = [](double r, double z) { return (1 - r * r) * (1 + r * r) * std::cos(pi * z) * std::exp(-r * r); };
    std::vector<double> residuals;
    for (int n : {16, 32, 64, 128}) {
        const auto g = make_grid(1.0, 1.0, n, n);
        residuals.push_back(divergence(reconstruct_velocity(ScalarField::sample(g, Parity::even, OuterBc::dirichlet, psi))).max_abs());
    }
    for (std::size_t i = 0; i + 1 < residuals.size(); ++i) {
        const double ratio = residuals[i] / residuals[i + 1];
        CHECK(ratio >= 3.5);
        CHECK(ratio <= 4.5);
    }
}

TEST_CASE("swirl maximum and energy do not grow without forcing") {
    const auto g = make_grid(1.0, 1.0, 32, 32, ZScheme::finite_difference);
    SimulationOptions o = fixed_steps(1e-3, 200);
    o.dynamics.advection = Advection::upwind;
    const State s0 = make_initial_state(g, {Preset::random, 5.0, family_seed});
    const Trajectory run = simulate(s0, Forcing::none(g), o);
    REQUIRE(run.samples.size() == 201);
    for (std::size_t i = 1; i < run.samples.size(); ++i) {
        CHECK(run.samples[i].swirl_sup <= run.samples[i - 1].swirl_sup + 1e-10);
        CHECK(std::sqrt(run.samples[i].kinetic_sq) <= std::sqrt(run.samples[i - 1].kinetic_sq) + 1e-9);
    }
    CHECK(run.samples.back().swirl_sup <= run.samples.front().swirl_sup);
}

TEST_CASE("energy balance: kinetic energy lost equals twice the dissipated energy") {
    const auto g = make_grid(1.0, 1.0, 48, 48);
    const SimulationOptions o = fixed_steps(2.5e-4, 200);
    const State s0 = make_initial_state(g, {Preset::random, 1.0, family_seed});
    const Trajectory run = simulate(s0, Forcing::none(g), o);
    std::vector<double> dissipated;
    for (const auto& s : run.samples) dissipated.push_back(s.dissipation_sq + s.axis_phi_sq);
    const double lost = run.samples.front().kinetic_sq - run.samples.back().kinetic_sq;
    const double work = 2.0 * o.dynamics.nu * cumulative_trapezoid(run.times(), dissipated).back();
    CHECK(lost > 0.0);
    CHECK(lost == doctest::Approx(work).epsilon(0.05));
}

TEST_CASE("dual formulations agree to discretisation error") {
    const auto gap = [](int n, double dt, int steps) {
        const auto g = make_grid(1.0, 1.0, n, n);
        SimulationOptions o = fixed_steps(dt, steps, 0.1);
        const State s0 = make_initial_state(g, {Preset::random, 5.0, family_seed});
        const Trajectory run = simulate(s0, make_forcing(g, {Preset::random, 1.0, family_seed}), o);
        double gg = 0.0;
        double sg = 0.0;
        for (const auto& s : run.samples) {
            gg = std::max(gg, s.gamma_gap);
            sg = std::max(sg, s.swirl_gap);
        }
        CHECK(run.samples.front().gamma_gap == 0.0);
        CHECK(run.samples.front().swirl_gap == 0.0);
        return std::pair{gg, sg};
    };
    const auto coarse = gap(32, 4e-4, 100);
    const auto fine = gap(64, 1e-4, 400);
    CHECK(coarse.first / fine.first >= 3.0);
    CHECK(coarse.second / fine.second >= 3.0);
}

TEST_CASE("IMEX and RK4 agree on a smooth short run") {
    const auto g = make_grid(1.0, 1.0, 24, 24);
    const State s0 = make_initial_state(g, {Preset::single_mode, 1.0, family_seed});
    SimulationOptions a = fixed_steps(1e-4, 50);
    SimulationOptions b = a;
    b.dynamics.scheme = TimeScheme::rk4;
    REQUIRE(b.time_step.dt_max <= diffusive_step_limit(*g, 1.0));
    const Trajectory ra = simulate(s0, Forcing::none(g), a);
    const Trajectory rb = simulate(s0, Forcing::none(g), b);
    const double ka = ra.samples.back().kinetic_sq;
    const double kb = rb.samples.back().kinetic_sq;
    CHECK(std::abs(ka - kb) <= 1e-2 * kb);
}

TEST_CASE("simulation is deterministic") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    const State s0 = make_initial_state(g, {Preset::random, 2.0, 7});
    const Forcing f = make_forcing(g, {Preset::random, 1.0, 7});
    SimulationOptions o;
    o.t_end = 0.02;
    const Trajectory a = simulate(s0, f, o);
    const Trajectory b = simulate(s0, f, o);
    REQUIRE(a.samples.size() == b.samples.size());
    for (std::size_t i = 0; i < a.samples.size(); ++i) {
        for (const auto& c : sample_columns()) CHECK(a.samples[i].*c.member == b.samples[i].*c.member);
    }
    CHECK(a.samples.back().t == o.t_end);
}

TEST_CASE("presets") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    const State zero = make_initial_state(g, {Preset::zero, 3.0, 1});
    CHECK(zero.u1.max_abs() == 0.0);
    const State single = make_initial_state(g, {Preset::single_mode, 2.0, 1});
    CHECK(single.u1.max_abs() <= 2.0);
    CHECK(single.u1.max_abs() >= 1.8);
    const State r1 = make_initial_state(g, {Preset::random, 1.0, 1});
    const State r2 = make_initial_state(g, {Preset::random, 1.0, 2});
    CHECK(r1.u1[5] != r2.u1[5]);
    CHECK(make_initial_state(g, {Preset::random, 1.0, 1}).u1[5] == r1.u1[5]);
    CHECK(parse_preset("single-mode") == Preset::single_mode);
    CHECK_THROWS_AS(parse_preset("gaussian"), Error);
    CHECK_THROWS_AS(parse_time_scheme("euler"), Error);
}

TEST_CASE("zero preset gives identically zero series") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    SimulationOptions o;
    o.t_end = 0.05;
    const Trajectory run = simulate(make_initial_state(g, {Preset::zero, 0.0, 1}), Forcing::none(g), o);
    for (const auto& s : run.samples) {
        for (const auto& c : sample_columns()) {
            if (std::string(c.name) == "t" || std::string(c.name) == "dt") continue;
            CHECK(s.*c.member == 0.0);
        }
    }
}

TEST_CASE("time step policy") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    const State s0 = make_initial_state(g, {Preset::random, 20.0, 3});
    SimulationOptions o;
    o.t_end = 0.03;
    o.time_step.dt_max = 0.01;
    const Trajectory run = simulate(s0, Forcing::none(g), o);
    for (std::size_t i = 1; i < run.samples.size(); ++i) CHECK(run.samples[i].dt <= 0.01 + 1e-15);
    CHECK(run.samples.back().t == doctest::Approx(0.03).epsilon(1e-14));
    CHECK(diffusive_step_limit(*g, 2.0) == doctest::Approx(0.15 * std::pow(1.0 / 16, 2) / 2.0));

    SimulationOptions fixed = fixed_steps(0.5, 1);
    const Trajectory warned = simulate(s0, Forcing::none(g), fixed);
    CHECK(!warned.warnings.empty());
}

TEST_CASE("invalid inputs are rejected") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    const State s0 = make_initial_state(g, {Preset::random, 1.0, 3});
    CHECK_THROWS_AS(step(s0, 0.0, Forcing::none(g), DynamicsOptions{}), Error);
    DynamicsOptions bad;
    bad.nu = 0.0;
    CHECK_THROWS_AS(step(s0, 1e-3, Forcing::none(g), bad), Error);
    SimulationOptions o;
    o.t_end = -1.0;
    try {
        simulate(s0, Forcing::none(g), o);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::config_error);
    }
}

TEST_CASE("non-finite data is reported as a numerical failure") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    State s0 = make_initial_state(g, {Preset::random, 1.0, 3});
    ScalarField bad = s0.u1;
    bad(3, 3) = std::numeric_limits<double>::quiet_NaN();
    try {
        step(State{s0.t, bad, s0.omega1, s0.psi1, s0.v_r, s0.v_z, 0.0}, 1e-3, Forcing::none(g), DynamicsOptions{});
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::numerical_failure);
    }
    try {
        simulate(State{s0.t, bad, s0.omega1, s0.psi1, s0.v_r, s0.v_z, 0.0}, Forcing::none(g), fixed_steps(1e-3, 5));
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::numerical_failure);
        CHECK(std::string(e.what()).find("last healthy step 0") != std::string::npos);
    }
}
