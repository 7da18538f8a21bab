#include <cmath>

#include "axicyl/elliptic.hpp"
#include "axicyl/error.hpp"
#include "axicyl/modal.hpp"
#include "axicyl/norms.hpp"
#include "axicyl/operators.hpp"
#include "doctest.h"
#include "test_helpers.hpp"

using namespace axicyl;
using axicyl::testing::pi;

namespace {

/// psi1 = (R^2 - r^2) cos(pi z / a) and its right-hand side.
double manufactured_psi(double r, double z) { return (1 - r * r) * std::cos(pi * z); }
double manufactured_rhs(double r, double z) { return (8 + pi * pi * (1 - r * r)) * std::cos(pi * z); }

ScalarField rhs_on(const GridPtr& g) {
    return ScalarField::sample(g, Parity::even, OuterBc::free, manufactured_rhs);
}

}  // namespace

TEST_CASE("zero vorticity gives zero stream ratio") {
    const auto g = make_grid(1.0, 1.0, 32, 32);
    const auto res = solve_with_residual({EllipticKind::stream_ratio, ScalarField::constant(g, 0.0)});
    CHECK(res.solution.max_abs() <= 1e-10);
    CHECK(res.solution.bc() == OuterBc::dirichlet);
}

TEST_CASE("manufactured stream ratio: exact radially, second order with differenced z") {
    // The radial closure is exact on quadratics, so with FFT in z only round-off remains.
    for (int n : {32, 64, 128}) {
        const auto g = make_grid(1.0, 1.0, n, n);
        const auto res = solve_with_residual({EllipticKind::stream_ratio, rhs_on(g)});
        CHECK(res.residual <= 1e-10);
        CHECK(testing::l2_error(res.solution, manufactured_psi) < 1e-12);
    }
    std::vector<double> errors;
    for (int n : {32, 64, 128}) {
        const auto g = make_grid(1.0, 1.0, n, n, ZScheme::finite_difference);
        const auto res = solve_with_residual({EllipticKind::stream_ratio, rhs_on(g)});
        CHECK(res.residual <= 1e-10);
        errors.push_back(testing::l2_error(res.solution, manufactured_psi));
    }
    for (double order : testing::observed_orders(errors)) CHECK(order >= 1.9);
}

TEST_CASE("non-polynomial manufactured stream ratio converges at second order") {
    // psi1 = (1 - r^2) exp(-r^2) cos(pi z); rhs from its closed-form derivatives.
    const auto exact = [](double r, double z) { return (1 - r * r) * std::exp(-r * r) * std::cos(pi * z); };
    const auto rhs = [](double r, double z) {
        const double e = std::exp(-r * r);
        const double g2 = e * (-4 + 14 * r * r - 4 * r * r * r * r);
        const double g1_over_r = e * (-4 + 2 * r * r);
        return -(g2 + 3 * g1_over_r - pi * pi * (1 - r * r) * e) * std::cos(pi * z);
    };
    std::vector<double> errors;
    for (int n : {32, 64, 128}) {
        const auto g = make_grid(1.0, 1.0, n, n);
        const auto res =
            solve_with_residual({EllipticKind::stream_ratio, ScalarField::sample(g, Parity::even, OuterBc::free, rhs)});
        CHECK(res.residual <= 1e-10);
        errors.push_back(testing::l2_error(res.solution, exact));
    }
    for (double order : testing::observed_orders(errors)) CHECK(order >= 1.9);
}

TEST_CASE("z-derivative problem commutes with d_z") {
    for (ZScheme scheme : {ZScheme::spectral, ZScheme::finite_difference}) {
        std::vector<double> errors;
        for (int n : {32, 64, 128}) {
            const auto g = make_grid(1.0, 1.0, n, n, scheme);
            const auto omega = rhs_on(g);
            const auto psi = solve({EllipticKind::stream_ratio, omega});
            const auto u = solve({EllipticKind::z_derivative, d_z(omega)});
            CHECK((u - d_z(psi)).max_abs() < 1e-10);
            errors.push_back(
                testing::l2_error(u, [](double r, double z) { return -pi * (1 - r * r) * std::sin(pi * z); }));
        }
        if (scheme == ZScheme::spectral) {
            CHECK(errors.back() < 1e-10);
        } else {
            for (double order : testing::observed_orders(errors)) CHECK(order >= 1.9);
        }
    }
}

TEST_CASE("stream problem for odd fields") {
    // psi = r (1 - r^2) cos(pi z): -lap psi + psi/r^2 = (8 r + pi^2 r (1 - r^2)) cos(pi z).
    std::vector<double> errors;
    for (int n : {32, 64, 128}) {
        const auto g = make_grid(1.0, 1.0, n, 16);
        const auto rhs = ScalarField::sample(g, Parity::odd, OuterBc::dirichlet, [](double r, double z) {
            return (8 * r + pi * pi * r * (1 - r * r)) * std::cos(pi * z);
        });
        const auto res = solve_with_residual({EllipticKind::stream, rhs});
        CHECK(res.residual <= 1e-10);
        CHECK(res.solution.parity() == Parity::odd);
        errors.push_back(testing::l2_error(res.solution, [](double r, double z) { return r * (1 - r * r) * std::cos(pi * z); }));
    }
    for (double order : testing::observed_orders(errors)) CHECK(order >= 1.9);
}

TEST_CASE("solve is linear") {
    const auto g = make_grid(1.0, 1.5, 48, 32);
    const auto f = testing::random_field(g, 1);
    const auto h = testing::random_field(g, 2);
    const auto lhs = solve({EllipticKind::stream_ratio, 2.0 * f + (-0.5) * h});
    const auto rhs = 2.0 * solve({EllipticKind::stream_ratio, f}) + (-0.5) * solve({EllipticKind::stream_ratio, h});
    CHECK((lhs - rhs).max_abs() <= 1e-12 * (1 + lhs.max_abs()));
}

TEST_CASE("parity mismatch is rejected") {
    const auto g = make_grid(1.0, 1.0, 16, 16);
    CHECK_THROWS_AS(solve({EllipticKind::stream, ScalarField::constant(g, 1.0)}), Error);
}

TEST_CASE("radial matrices are M-matrices for both drift signs") {
    const auto g = make_grid(1.0, 1.0, 32, 16);
    for (const RadialOperator& op : {ratio_operator(), swirl_operator(), operator_for(EllipticKind::stream)}) {
        for (int m : {0, 3}) {
            const Tridiagonal a = radial_matrix(op, *g, m);
            for (std::size_t j = 0; j < a.diag.size(); ++j) {
                CHECK(a.lower[j] <= 0.0);
                CHECK(a.upper[j] <= 0.0);
                CHECK(a.diag[j] >= -a.lower[j] - a.upper[j] - 1e-9);
            }
        }
    }
}

TEST_CASE("shifted solve inverts sigma I - kappa L") {
    const auto g = make_grid(1.0, 1.0, 32, 16);
    const auto f = testing::random_field(g, 4);
    for (const RadialOperator& op : {ratio_operator(), swirl_operator()}) {
        const auto x = solve_shifted(op, f, 1.0, 0.01);
        CHECK(relative_residual(op, x, f, 1.0, 0.01) < 1e-12);
    }
}

TEST_CASE("weak estimate audit") {
    const auto g = make_grid(1.0, 1.0, 32, 32);
    const auto zero = ScalarField::constant(g, 0.0, Parity::even, OuterBc::dirichlet);
    const auto rz = weak_estimate_audit(zero, solve({EllipticKind::stream_ratio, zero}));
    CHECK(rz.ratio == 0.0);
    CHECK(rz.verdict == Verdict::pass);
    const auto omega = rhs_on(g);
    const auto rep = weak_estimate_audit(omega, solve({EllipticKind::stream_ratio, omega}));
    CHECK(std::isfinite(rep.ratio));
    CHECK(rep.ratio > 0.0);
    CHECK(rep.verdict == Verdict::ratio_recorded);
}

TEST_CASE("second-order audits itemise terms and match a refined oracle") {
    const auto zero_g = make_grid(1.0, 1.0, 16, 16);
    const auto zero = ScalarField::constant(zero_g, 0.0, Parity::even, OuterBc::dirichlet);
    for (const auto& r : h2_estimates_audit(zero, solve({EllipticKind::stream_ratio, zero}))) {
        CHECK(r.lhs == 0.0);
        CHECK(r.verdict == Verdict::pass);
    }
    // Oracle for psi1 = (1 - r^2) cos(pi z): the volume integrals in closed form.
    const double c2 = 1.0;  // integral of cos^2 over (-1, 1)
    const double rr = 4.0 * 0.5 * c2;                             // psi_rr = -2
    const double rz = pi * pi * 4.0 * 0.25 * c2;                  // psi_rz = 2 pi r sin
    const double zz = std::pow(pi, 4) * (1.0 / 6.0) * c2;         // int (1-r^2)^2 r dr = 1/6
    const double r2 = 4.0 * 0.5 * c2;                              // psi_r / r = -2
    const double axis = pi * pi * c2;                              // psi_z(0) = -pi sin
    const double wall = 4.0 * c2;                                  // psi_r(1) = -2 cos
    const auto g = make_grid(1.0, 1.0, 128, 64);
    const auto omega = rhs_on(g);
    const auto reps = h2_estimates_audit(omega, solve({EllipticKind::stream_ratio, omega}));
    REQUIRE(reps.size() == 3);
    CHECK(reps[0].term("psi1_rr^2") == doctest::Approx(rr).epsilon(0.01));
    CHECK(reps[0].term("psi1_rz^2") == doctest::Approx(rz).epsilon(0.01));
    CHECK(reps[0].term("psi1_zz^2") == doctest::Approx(zz).epsilon(0.01));
    CHECK(reps[0].term("psi1_r^2/r^2") == doctest::Approx(r2).epsilon(0.01));
    CHECK(reps[0].term("axis psi1_z^2") == doctest::Approx(axis).epsilon(0.01));
    CHECK(reps[0].term("wall psi1_r^2") == doctest::Approx(wall).epsilon(0.01));
    for (const auto& r : reps) CHECK(std::isfinite(r.ratio));
}

TEST_CASE("mixed weight audit: z-independent data and the axis flag") {
    const auto g = make_grid(1.0, 1.0, 64, 32);
    const auto flat = ScalarField::sample(g, Parity::even, OuterBc::dirichlet, [](double r, double) { return 1 - r * r; });
    for (const auto& r : mixed_weight_audit(flat, solve({EllipticKind::stream_ratio, flat}))) {
        CHECK(r.lhs == 0.0);
        CHECK(r.verdict == Verdict::pass);
    }
    const auto omega = rhs_on(g);
    const auto reps = mixed_weight_audit(omega, solve({EllipticKind::stream_ratio, omega}));
    CHECK(reps[0].verdict == Verdict::ratio_recorded);
    CHECK(reps[1].verdict == Verdict::inapplicable);

    // psi1 = r^2 (1 - r^2) cos(pi z) vanishes on the axis.
    const ModalField psi(1.0, {ModalTerm{Polynomial({0, 0, 1, 0, -1}), 1, 1.0, 0.0}});
    const auto omega_axis = psi.negative_operator(2.0).sample(g, Parity::even, OuterBc::free);
    const auto reps_axis = mixed_weight_audit(omega_axis, solve({EllipticKind::stream_ratio, omega_axis}));
    CHECK(reps_axis[0].verdict == Verdict::ratio_recorded);
    CHECK(reps_axis[1].verdict == Verdict::ratio_recorded);
    CHECK(std::isfinite(reps_axis[1].ratio));
}

TEST_CASE("symbolic vorticity of the axis-vanishing stream ratio") {
    // -(psi_rr + 3/r psi_r + psi_zz) for psi = r^2 (1 - r^2) cos(pi z) is (-8 + 24 r^2 + pi^2 r^2 (1 - r^2)) cos.
    const ModalField psi(1.0, {ModalTerm{Polynomial({0, 0, 1, 0, -1}), 1, 1.0, 0.0}});
    const ModalField omega = psi.negative_operator(2.0);
    for (double r : {0.1, 0.5, 0.9}) {
        const double expect = (-8 + 24 * r * r + pi * pi * r * r * (1 - r * r)) * std::cos(pi * 0.3);
        CHECK(omega(r, 0.3) == doctest::Approx(expect).epsilon(1e-12));
    }
}

TEST_CASE("weighted third-order audit") {
    const auto g = make_grid(1.0, 1.0, 64, 32);
    const auto zero = ScalarField::constant(g, 0.0, Parity::even, OuterBc::dirichlet);
    const auto rz = weighted_third_order_audit(zero, zero, 0.5);
    CHECK(rz.lhs == 0.0);
    CHECK(rz.verdict == Verdict::pass);
    CHECK_THROWS_AS(weighted_third_order_audit(zero, zero, 1.0), Error);
    std::vector<double> ratios;
    for (int n : {64, 128}) {
        const auto gg = make_grid(1.0, 1.0, n, 32);
        const auto omega = rhs_on(gg);
        ratios.push_back(weighted_third_order_audit(omega, solve({EllipticKind::stream_ratio, omega}), 0.5).ratio);
    }
    CHECK(std::isfinite(ratios[0]));
    CHECK(std::abs(ratios[1] / ratios[0] - 1.0) < 0.1);
    for (double mu : {0.05, 0.25, 0.5, 0.75, 0.95}) {
        const auto omega = rhs_on(g);
        const auto rep = weighted_third_order_audit(omega, solve({EllipticKind::stream_ratio, omega}), mu);
        CHECK(std::isfinite(rep.ratio));
        CHECK(rep.ratio < 100.0);
    }
}

TEST_CASE("seeded families are deterministic and respect their structure") {
    const auto a = random_vorticity_family(1.0, 1.0, family_seed);
    const auto b = random_vorticity_family(1.0, 1.0, family_seed);
    REQUIRE(a.size() == 20);
    for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i].vorticity(0.3, 0.2) == b[i].vorticity(0.3, 0.2));
    const auto axis = axis_vanishing_family(1.0, 1.0, family_seed);
    for (const auto& s : axis) {
        CHECK(s.has_exact_stream);
        CHECK(s.stream(0.0, 0.4) == 0.0);
        CHECK(s.stream(1.0, 0.4) == doctest::Approx(0.0).scale(1.0));
        CHECK(s.stream.terms().size() <= 5);
    }
}
