#include <cmath>

#include "axicyl/error.hpp"
#include "axicyl/grid.hpp"
#include "axicyl/operators.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace axicyl;
using axicyl::testing::pi;

TEST_CASE("make_grid places cell centres away from the axis") {
    const auto g = make_grid(1.0, 1.0, 8, 8);
    CHECK(g->r(0) == doctest::Approx(1.0 / 16.0));
    CHECK(g->z(0) == doctest::Approx(-1.0));
    for (int j = 1; j < g->nr(); ++j) CHECK(g->r(j) > g->r(j - 1));
    CHECK(g->r(g->nr() - 1) < 1.0);
}

TEST_CASE("make_grid spacing") {
    const auto g = make_grid(2.0, 0.5, 64, 32);
    CHECK(g->dr() == doctest::Approx(0.03125));
    CHECK(g->dz() == doctest::Approx(0.03125));
}

TEST_CASE("make_grid rejects bad dimensions") {
    auto kind_of = [](auto&& fn) {
        try {
            fn();
        } catch (const Error& e) {
            return e.kind();
        }
        return ErrorKind::io_error;
    };
    CHECK(kind_of([] { make_grid(1.0, 1.0, 0, 8); }) == ErrorKind::invalid_dimension);
    CHECK(kind_of([] { make_grid(1.0, 1.0, 8, 9); }) == ErrorKind::invalid_dimension);
    CHECK(kind_of([] { make_grid(1.0, 1.0, 8, 6); }) == ErrorKind::invalid_dimension);
    CHECK(kind_of([] { make_grid(-1.0, 1.0, 8, 8); }) == ErrorKind::invalid_argument);
}

TEST_CASE("untagged field raises missing boundary tag") {
    ScalarField empty;
    CHECK_THROWS_AS(d_r(empty), Error);
    try {
        d_z(empty);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::missing_boundary_tag);
    }
}

TEST_CASE("d_z of sin is cos, both z schemes") {
    for (ZScheme scheme : {ZScheme::spectral, ZScheme::finite_difference}) {
        double prev = 0.0;
        for (int n : {32, 64, 128}) {
            const auto g = make_grid(1.0, 1.0, 8, n, scheme);
            const auto f = ScalarField::sample(g, Parity::even, OuterBc::free,
                                               [](double, double z) { return std::sin(pi * z); });
            const double e = testing::max_error(d_z(f), [](double, double z) { return pi * std::cos(pi * z); });
            if (scheme == ZScheme::spectral) CHECK(e < 1e-12);
            if (prev > 0.0 && scheme == ZScheme::finite_difference) CHECK(std::log2(prev / e) > 1.9);
            prev = e;
        }
    }
}

TEST_CASE("d_zz and laplace_cyl annihilate constants exactly") {
    for (ZScheme scheme : {ZScheme::spectral, ZScheme::finite_difference}) {
        const auto g = make_grid(1.0, 1.0, 16, 16, scheme);
        const auto c = ScalarField::constant(g, 3.5);
        CHECK(d_zz(c).max_abs() < 1e-13);
        CHECK(laplace_cyl(c).max_abs() < 1e-12);
    }
}

TEST_CASE("radial derivatives converge at second order") {
    // g = (1 - r^2) exp(-r^2) cos(pi z) vanishes at R = 1; b = exp(-r^2) has no outer condition.
    std::vector<double> e1, e2, e3, lap, mod;
    for (int n : {32, 64, 128}) {
        const auto g = make_grid(1.0, 1.0, n, 16);
        const auto psi = ScalarField::sample(g, Parity::even, OuterBc::dirichlet, [](double r, double z) {
            return (1 - r * r) * std::exp(-r * r) * std::cos(pi * z);
        });
        const auto bump = ScalarField::sample(g, Parity::even, OuterBc::free,
                                              [](double r, double) { return std::exp(-r * r); });
        e1.push_back(testing::max_error(d_r(psi), [](double r, double z) {
            return std::exp(-r * r) * (-4 * r + 2 * r * r * r) * std::cos(pi * z);
        }));
        e2.push_back(testing::max_error(d_rr(bump), [](double r, double) {
            return (-2 + 4 * r * r) * std::exp(-r * r);
        }));
        e3.push_back(testing::max_error(d_rrr(bump), [](double r, double) {
            return (12 * r - 8 * r * r * r) * std::exp(-r * r);
        }));
        lap.push_back(testing::max_error(laplace_cyl(bump), [](double r, double) {
            return (-4 + 4 * r * r) * std::exp(-r * r);
        }));
        mod.push_back(testing::max_error(laplace_mod(psi), [](double r, double z) {
            const double e = std::exp(-r * r);
            const double g2 = e * (-4 + 14 * r * r - 4 * r * r * r * r);
            const double g1_over_r = e * (-4 + 2 * r * r);
            return (g2 + 3 * g1_over_r - pi * pi * (1 - r * r) * e) * std::cos(pi * z);
        }));
    }
    for (const auto* errors : {&e1, &e2, &e3, &lap, &mod}) {
        for (double order : testing::observed_orders(*errors)) CHECK(order >= 1.9);
    }
}

TEST_CASE("laplace_mod of the manufactured stream ratio") {
    const auto g = make_grid(1.0, 1.0, 32, 16);
    const auto psi = ScalarField::sample(g, Parity::even, OuterBc::dirichlet,
                                         [](double r, double z) { return (1 - r * r) * std::cos(pi * z); });
    CHECK(testing::max_error(laplace_mod(psi), [](double r, double z) {
              return -(8.0 + pi * pi * (1 - r * r)) * std::cos(pi * z);
          }) < 1e-9);
}

TEST_CASE("d_r of R^2 - r^2 is -2r") {
    const auto g = make_grid(1.0, 1.0, 64, 8);
    const auto f = ScalarField::sample(g, Parity::even, OuterBc::dirichlet, [](double r, double) { return 1 - r * r; });
    CHECK(testing::max_error(d_r(f), [](double r, double) { return -2 * r; }) < 1e-10);
    CHECK(d_r(f).parity() == Parity::odd);
}

TEST_CASE("laplace_cyl of r^2 is 4") {
    const auto g = make_grid(1.0, 1.0, 32, 8);
    const auto f = ScalarField::sample(g, Parity::even, OuterBc::free, [](double r, double) { return r * r; });
    CHECK(testing::max_error(laplace_cyl(f), [](double, double) { return 4.0; }) < 1e-9);
}

TEST_CASE("swirl operator differs from laplace_mod by 4/r d_r") {
    const auto g = make_grid(1.0, 1.0, 32, 16);
    const auto f = testing::random_field(g, 5);
    const auto diff = laplace_mod(f) - swirl_laplace(f);
    const auto expect = scale_by_r(d_r(f), -1) * 4.0;
    CHECK(testing::max_error(diff.retagged(Parity::even, OuterBc::free), [&](double, double) { return 0.0; }) ==
          doctest::Approx(expect.max_abs()).epsilon(1e-12));
}

TEST_CASE("integrate and boundary integral") {
    const auto g = make_grid(1.0, 1.0, 64, 16);
    CHECK(integrate(ScalarField::constant(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-12));
    const auto r = ScalarField::sample(g, Parity::odd, OuterBc::free, [](double rr, double) { return rr; });
    CHECK(integrate(r) == doctest::Approx(2.0 / 3.0).epsilon(1e-3));
    CHECK(boundary_integral_S1(ScalarField::constant(g, 1.0)) == doctest::Approx(2.0).epsilon(1e-12));
    const auto dir = ScalarField::constant(g, 1.0, Parity::even, OuterBc::dirichlet);
    CHECK(boundary_integral_S1(dir) == 0.0);
}

TEST_CASE("integrate is linear and positive") {
    const auto g = make_grid(1.0, 2.0, 24, 16);
    const auto f = testing::random_field(g, 11);
    const auto h = testing::random_field(g, 12);
    CHECK(integrate(2.0 * f + (-3.0) * h) == doctest::Approx(2.0 * integrate(f) - 3.0 * integrate(h)).epsilon(1e-12));
    const auto sq = f * f;
    CHECK(integrate(sq) >= 0.0);
}

TEST_CASE("laplace_cyl and d_r commute with z-translation") {
    const auto g = make_grid(1.0, 1.0, 16, 32);
    const auto f = testing::random_field(g, 3);
    auto shifted = f.zeros_like();
    const int s = 5;
    for (int j = 0; j < g->nr(); ++j) {
        for (int k = 0; k < g->nz(); ++k) shifted(j, k) = f(j, (k + s) % g->nz());
    }
    for (auto op : {&laplace_cyl, &d_r}) {
        const auto a = op(f);
        const auto b = op(shifted);
        double e = 0.0;
        for (int j = 0; j < g->nr(); ++j) {
            for (int k = 0; k < g->nz(); ++k) e = std::max(e, std::abs(b(j, k) - a(j, (k + s) % g->nz())));
        }
        CHECK(e < 1e-11);
    }
}

TEST_CASE("odd fields extrapolate to zero on the axis, d_r of odd is even") {
    std::vector<double> axis;
    for (int n : {16, 32, 64}) {
        const auto g = make_grid(1.0, 1.0, n, 8);
        const auto f = ScalarField::sample(g, Parity::odd, OuterBc::free,
                                           [](double r, double z) { return (r + r * r * r) * (2 + std::cos(pi * z)); });
        double m = 0.0;
        for (double v : trace_at_axis(f)) m = std::max(m, std::abs(v));
        axis.push_back(m);
        CHECK(d_r(f).parity() == Parity::even);
    }
    CHECK(axis.back() < 1e-3);
    CHECK(axis.back() < axis.front());
}

TEST_CASE("traces at R") {
    const auto g = make_grid(1.0, 1.0, 64, 8);
    const auto f = ScalarField::sample(g, Parity::even, OuterBc::free, [](double r, double) { return 1 + r * r; });
    for (double v : trace_at_R(f)) CHECK(v == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("upwind advection is a monotone stencil") {
    const auto g = make_grid(1.0, 1.0, 16, 16, ZScheme::finite_difference);
    const auto vr = ScalarField::sample(g, Parity::odd, OuterBc::dirichlet,
                                        [](double r, double z) { return r * (1 - r * r) * std::sin(pi * z); });
    const auto vz = ScalarField::sample(g, Parity::even, OuterBc::free,
                                        [](double r, double z) { return (2 - 4 * r * r) * std::cos(pi * z); });
    const auto f = testing::random_field(g, 9);
    const auto adv = advect(vr, vz, f, Advection::upwind);
    const double dt = 0.2 * g->dr();
    auto next = f;
    next.axpy(-dt, adv.retagged(f.parity(), f.bc()));
    CHECK(next.max_abs() <= f.max_abs() * (1 + 1e-14));
    const auto cen = advect(vr, vz, f, Advection::centered);
    CHECK(cen.all_finite());
}
