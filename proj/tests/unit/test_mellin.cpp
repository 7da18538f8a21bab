#include <cmath>

#include "axicyl/error.hpp"
#include "axicyl/mellin.hpp"
#include "doctest.h"

using namespace axicyl;

namespace {

/// f(r) = r^2 (1 - r) on R = 1.
RadialProfile cubic_profile() { return RadialProfile::from_polynomial(Polynomial({0.0, 0.0, 1.0, -1.0})); }

}  // namespace

TEST_CASE("resolvent poles") {
    const auto [a, b] = resolvent_poles();
    CHECK(std::abs(a - complex(0, -3)) < 1e-12);
    CHECK(std::abs(b - complex(0, 1)) < 1e-12);
    for (complex l : {a, b}) CHECK(std::abs(l * l + complex(0, 2) * l + 3.0) <= 1e-12);
    // (lambda - a)(lambda - b) expands back to lambda^2 + 2 i lambda + 3.
    CHECK(std::abs(-(a + b) - complex(0, 2)) < 1e-12);
    CHECK(std::abs(a * b - 3.0) < 1e-12);
}

TEST_CASE("resolvent values") {
    const complex v = resolvent({1.0, 0.5});
    CHECK(std::abs(v - 1.0 / complex(2.75, 3.0)) < 1e-14);
    CHECK(std::abs(v) == doctest::Approx(0.2457).epsilon(1e-3));
    CHECK(resolvent(0.0) == complex(1.0 / 3.0));
    try {
        resolvent({0.0, 1.0});
        FAIL("expected pole error");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::pole_evaluation);
    }
    CHECK_THROWS_AS(resolvent({0.0, -3.0}), Error);
}

TEST_CASE("weighted norm two ways: zero profile") {
    const auto z = RadialProfile::from_polynomial(Polynomial({0.0}));
    const auto t = weighted_norm_two_ways(z, 0, 0.5);
    CHECK(t.direct == 0.0);
    CHECK(t.transformed == 0.0);
}

TEST_CASE("weighted norm two ways agree for k = 0 and k = 1") {
    const auto f = cubic_profile();
    // Without the cutoff the direct side has closed forms: B(7,3) = 1/252 and 1/105 + 3/35 = 2/21.
    const auto raw0 = weighted_norm_two_ways(f, 0, 0.5, 1.0, nullptr, Cutoff::none);
    CHECK(raw0.direct == doctest::Approx(1.0 / 252.0).epsilon(1e-8));
    CHECK(raw0.transformed == doctest::Approx(raw0.direct).epsilon(0.02));
    const auto raw1 = weighted_norm_two_ways(f, 1, 0.5, 1.0, nullptr, Cutoff::none);
    CHECK(raw1.direct == doctest::Approx(2.0 / 21.0).epsilon(1e-8));
    CHECK(raw1.transformed == doctest::Approx(raw1.direct).epsilon(0.02));
    for (int k : {0, 1}) {
        const auto t = weighted_norm_two_ways(f, k, 0.5);
        CHECK(t.direct > 0.0);
        CHECK(t.transformed == doctest::Approx(t.direct).epsilon(0.02));
    }
}

TEST_CASE("k = 2 sides are equivalent, not equal") {
    const auto f = cubic_profile();
    for (double mu : {0.25, 0.5, 0.75}) {
        const auto t = weighted_norm_two_ways(f, 2, mu);
        CHECK(std::isfinite(t.direct));
        const double ratio = t.transformed / t.direct;
        CHECK(ratio > 0.1);
        CHECK(ratio < 10.0);
    }
}

TEST_CASE("Parseval sides agree") {
    for (int k : {0, 1, 2}) {
        for (double mu : {0.1, 0.5, 0.9}) {
            const auto s = parseval_sides(cubic_profile(), k, mu);
            CHECK(s.line_side == doctest::Approx(s.tau_side).epsilon(0.02));
        }
    }
}

TEST_CASE("cutoff derivatives match finite differences") {
    const auto f = with_cutoff(cubic_profile(), 1.0);
    for (double r : {0.3, 0.6, 0.75, 0.9}) {
        const double h = 1e-5;
        CHECK(f.first(r) == doctest::Approx((f.value(r + h) - f.value(r - h)) / (2 * h)).epsilon(1e-6));
        CHECK(f.second(r) == doctest::Approx((f.first(r + h) - f.first(r - h)) / (2 * h)).epsilon(1e-5));
    }
    CHECK(f.value(1.0) == 0.0);
    CHECK(f.value(0.4) == doctest::Approx(0.16 * 0.6));
}

TEST_CASE("unresolvable profiles are rejected") {
    const auto one = RadialProfile::from_polynomial(Polynomial({1.0}));
    try {
        weighted_norm_two_ways(one, 1, 0.5);
        FAIL("expected unresolvable profile");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::unresolvable_profile);
    }
    CHECK_THROWS_AS(weighted_norm_two_ways(cubic_profile(), 3, 0.5), Error);
}

TEST_CASE("Fourier round trip") {
    const TauMesh mesh = make_tau_mesh(1.0, default_radius_cut, 4096);
    std::vector<complex> f(static_cast<std::size_t>(mesh.n));
    for (int i = 0; i < mesh.n; ++i) {
        const double t = mesh.node(i);
        f[static_cast<std::size_t>(i)] = complex(std::exp(-(t - 5) * (t - 5)), std::sin(t) * std::exp(-t));
    }
    const auto back = fourier_inverse(fourier_forward(f, mesh), mesh);
    double e = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) e = std::max(e, std::abs(back[i] - f[i]));
    CHECK(e < 1e-10);
}

TEST_CASE("Gaussian transform matches the closed form") {
    // (1/sqrt(2pi)) int exp(-i xi t) exp(-(t-c)^2/2) dt = exp(-xi^2/2) exp(-i xi c)
    const TauMesh mesh = make_tau_mesh(1.0, default_radius_cut, 4096);
    const double c = 7.0;
    std::vector<complex> f(static_cast<std::size_t>(mesh.n));
    for (int i = 0; i < mesh.n; ++i) {
        const double t = mesh.node(i);
        f[static_cast<std::size_t>(i)] = std::exp(-(t - c) * (t - c) / 2.0);
    }
    const auto hat = fourier_forward(f, mesh);
    const auto xi = mesh.frequencies();
    for (std::size_t m : {0u, 3u, 20u}) CHECK(std::abs(hat[m]) == doctest::Approx(std::exp(-xi[m] * xi[m] / 2)).epsilon(1e-9));
}

TEST_CASE("multiplier is bounded on every admissible line, poles avoided") {
    for (int i = 1; i <= 9; ++i) {
        const double mu = 0.1 * i;
        const auto s = multiplier_supremum(mu, 20001, 200.0);
        CHECK(std::isfinite(s.sup));
        CHECK(s.sup >= 1.0 / 9.0);
        CHECK(s.far_field == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(s.min_denominator == doctest::Approx(mu * (4.0 - mu)).epsilon(1e-9));
        CHECK(s.min_denominator > 0.0);
    }
    CHECK_THROWS_AS(make_resolvent_line(0.0, {0.0}), Error);
    const auto line = make_resolvent_line(0.5, {-1.0, 0.0, 1.0});
    CHECK(line.h == 0.5);
    CHECK(line.samples[2] == complex(1.0, 0.5));
}

TEST_CASE("line estimate: zero data and a Gaussian bump") {
    const TauMesh mesh = make_tau_mesh(1.0, default_radius_cut, 4096);
    const auto zero = line_estimate_check([](double) { return 0.0; }, 0.5, mesh);
    CHECK(zero.lhs == 0.0);
    CHECK(zero.rhs == 0.0);
    CHECK(zero.verdict == Verdict::pass);
    for (int i = 1; i <= 9; ++i) {
        const double mu = 0.1 * i;
        const auto r = line_estimate_check([](double t) { return std::exp(-(t - 7) * (t - 7)); }, mu, mesh);
        CHECK(r.verdict == Verdict::pass);
        CHECK(r.ratio <= *r.explicit_constant * 1.05);
        CHECK(std::isfinite(r.ratio));
    }
}
