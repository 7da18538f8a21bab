/// @file mellin.hpp
/// @brief The tau = -ln r transform, weighted-norm equivalence on lines
/// Im lambda = h, and the resolvent 1/(lambda^2 + 2 i lambda + 3).
#pragma once

#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "axicyl/audit_report.hpp"
#include "axicyl/modal.hpp"

namespace axicyl {

using complex = std::complex<double>;

/// Roots of lambda^2 + 2 i lambda + 3, ordered (-3i, i).
std::pair<complex, complex> resolvent_poles();

/// 1 / (lambda^2 + 2 i lambda + 3). Throws Error(pole_evaluation) at a root.
complex resolvent(complex lambda);

/// (|lambda|^4 + |lambda|^2 + 1) |R(lambda)|^2; tends to 1 as |lambda| grows.
double resolvent_multiplier(complex lambda);

/// Height of the integration line for a weighted norm of order k with
/// weight exponent mu.
inline double line_height(int k, double mu) { return k - 1.0 - mu; }

/// Samples lambda = xi + i h on the line attached to mu (h = 1 - mu).
struct ResolventLine {
    double mu = 0.5;
    double h = 0.5;
    std::vector<complex> samples;
};

/// Throws Error(pole_evaluation) when the line passes through a pole.
ResolventLine make_resolvent_line(double mu, const std::vector<double>& xi);

struct LineSupremum {
    double mu = 0.0;
    double h = 0.0;
    double sup = 0.0;              ///< max multiplier over the sampled line
    double argsup = 0.0;           ///< xi at the maximum
    double min_denominator = 0.0;  ///< min |lambda^2 + 2 i lambda + 3| on the samples
    double far_field = 0.0;        ///< multiplier at the largest sampled |xi|
};

/// Dense sampling of the multiplier on Im lambda = 1 - mu, xi in [-xi_max, xi_max].
LineSupremum multiplier_supremum(double mu, int samples = 200001, double xi_max = 1000.0);

/// Uniform tau mesh on [-ln R, -ln(R * cut)].
struct TauMesh {
    double tau_min = 0.0;
    double tau_max = 0.0;
    int n = 0;
    double step = 0.0;
    double node(int i) const { return tau_min + i * step; }
    /// Angular frequencies of the discrete transform in FFT order.
    std::vector<double> frequencies() const;
};

inline constexpr double default_radius_cut = 0x1.0p-20;
inline constexpr int default_tau_points = 1 << 14;

TauMesh make_tau_mesh(double radius, double cut = default_radius_cut, int n = default_tau_points);

/// (1/sqrt(2 pi)) integral exp(-i xi tau) f(tau) dtau at the mesh frequencies
/// (phase referred to tau_min).
std::vector<complex> fourier_forward(const std::vector<complex>& f, const TauMesh& mesh);
/// Inverse of fourier_forward on the same mesh.
std::vector<complex> fourier_inverse(const std::vector<complex>& f_hat, const TauMesh& mesh);

/// Radial profile with its first two derivatives.
struct RadialProfile {
    std::function<double(double)> value;
    std::function<double(double)> first;
    std::function<double(double)> second;

    static RadialProfile from_polynomial(const Polynomial& p);
};

/// f times a C-infinity step equal to 1 on (0, R/2] and vanishing with all
/// derivatives at r = R, so the weighted profile is smooth on the tau mesh.
RadialProfile with_cutoff(const RadialProfile& f, double radius);

enum class Cutoff { smooth, none };

struct TwoWayNorm {
    double direct = 0.0;       ///< sum_i integral |d_r^i f|^2 r^(2(mu-k+i)) r dr
    double transformed = 0.0;  ///< sum_j integral |lambda|^(2j) |f_hat|^2 on Im lambda = k - 1 - mu
};

/// Both sides of the weighted-norm equivalence. Equal for k <= 1, equivalent for k = 2.
/// Throws Error(unresolvable_profile) when the weighted profile is not
/// negligible at the small-r end of the mesh.
TwoWayNorm weighted_norm_two_ways(const RadialProfile& f, int k, double mu, double radius = 1.0,
                                  const TauMesh* mesh = nullptr, Cutoff cutoff = Cutoff::smooth);

struct ParsevalSides {
    double tau_side = 0.0;   ///< sum_j integral |d_tau^j u|^2 e^(2 h tau) dtau
    double line_side = 0.0;  ///< sum_j integral |lambda|^(2j) |u_hat|^2 on Im lambda = h
};

ParsevalSides parseval_sides(const RadialProfile& f, int k, double mu, double radius = 1.0,
                             const TauMesh* mesh = nullptr, Cutoff cutoff = Cutoff::smooth);

struct NamedProfile {
    std::string name;
    RadialProfile profile;
};

/// Polynomial profiles vanishing at least quadratically on the axis:
/// r^2(1-r), r^2(1-r^2), r^3(1-r)^2, r^2(1-r)(1+2r), on the unit radius.
std::vector<NamedProfile> parseval_profile_family();

/// v_hat = R(lambda) g_hat on Im lambda = 1 - mu. Reports
/// LHS = integral sum_j |lambda|^(2(2-j)) |v_hat|^2, RHS = integral |g_hat|^2,
/// and the multiplier supremum as the explicit constant.
AuditReport line_estimate_check(const std::function<double(double)>& g_tau, double mu, const TauMesh& mesh);

}  // namespace axicyl
