/// @file auditor.hpp
/// @brief Data constants of a run and the audits of the a-priori estimates
/// evaluated along a Trajectory.
///
/// Time integrals use the trapezoid rule on the run's own time mesh. Audits
/// with fully explicit constants get a pass/fail verdict; the others record
/// the realised ratio with every generic constant set to 1.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "axicyl/audit_report.hpp"
#include "axicyl/norms.hpp"
#include "axicyl/simulation.hpp"

namespace axicyl {

/// Data constants D1..D10 of a run, with the norms they are built from.
struct DConstants {
    double eps0 = 0.0;

    /// sqrt(3 |f|_{2,1}^2 + 2 |v(0)|_2^2), the energy-inequality form.
    double d1 = 0.0;
    /// |f|_{L2(space-time)} + |v(0)|_2
    double d1_sum = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
    /// sqrt(D1^2 (1 + D2) + |u_r(0)|^2 + |f0|^2 + |f0|_{L2(L4/3 on r=R)})
    double d4 = 0.0;
    /// sqrt(D1^2 (1 + D2^2) + |u_r(0)|^2 + |f0|^2 + |f0|_{L2(L4/3 on r=R)}^2), the derivative-estimate form.
    double d4_estimate = 0.0;
    /// D2 (D1 + D2 + D3)
    double d5 = 0.0;
    /// D2 (D1 + D3 + D4), the form used by the vorticity estimate.
    double d5_vorticity = 0.0;
    double d6 = 0.0;
    double d7 = 0.0;
    /// Increasing function of D2 taken as 1.
    double d8 = 0.0;
    /// (144 |f_phi|_{36/25,12}^12 + |v_phi(0)|_12^12)^(1/12)
    double d9 = 0.0;
    /// 12 |f_phi|_{36/25,12} + |v_phi(0)|_12
    double d9_linear = 0.0;
    double d10 = 0.0;

    double force_l2_l1 = 0.0;
    double force_l2_l2 = 0.0;
    double v0_l2 = 0.0;
    double f0_sup_l1 = 0.0;
    double u0_sup = 0.0;
    double uz0_sq = 0.0;
    double ur0_sq = 0.0;
    double f0_l2_l2_sq = 0.0;
    double f0_wall_l2 = 0.0;
    double curl_sq = 0.0;
    double vorticity0_sq = 0.0;
    double ratio_sources_sq = 0.0;
    double phi0_sq = 0.0;
    double gamma0_sq = 0.0;
    double f_phi_l12 = 0.0;
    double v_phi0_l12 = 0.0;
    double f1_sup_l1 = 0.0;
    double v_phi0_sup = 0.0;

    bool all_finite() const;
};

/// Throws Error(numerical_failure) when a constant is not finite.
DConstants compute_d_constants(const Trajectory& run, double eps0 = 0.01);

/// |v(t)|^2 + nu int (|grad v|^2 + |v_r/r|^2 + |v_phi/r|^2) against D1^2.
AuditReport energy_audit(const Trajectory& run, const DConstants& d);
/// sup |u| against D2.
AuditReport swirl_audit(const Trajectory& run, const DConstants& d, double tolerance = explicit_tolerance);
/// int int v_phi^4 against D2^2 D1^2 / nu.
AuditReport l4_audit(const Trajectory& run, const DConstants& d);
/// Energy of (Phi, Gamma) against I3 + D8.
AuditReport phi_gamma_audit(const Trajectory& run, const DConstants& d);

using Rational = boost::multiprecision::cpp_rational;

/// Reads "p/q", an integer or a finite decimal exactly.
Rational parse_rational(const std::string& text);
std::string format_rational(const Rational& q);

struct ExponentRecord {
    int d = 12;
    Rational eps1;
    Rational eps2;
    Rational eps;
    Rational eps0;
    Rational theta;   ///< (1 - 3/d) eps1 - (3/d) eps2
    Rational delta;   ///< 4 eps / theta
    Rational delta0;  ///< 2 eps / theta
    bool theta_positive = false;
    /// 1 + (3/d) eps2 > (1 - 3/d) eps1
    bool upper_restriction = false;
    /// delta < 6, the condition for closing the L_12 estimate
    bool closing_condition = false;
    /// eps1 > 11 eps2; meaningful for d = 12
    bool eps_ratio_condition = false;
};

/// Exact evaluation. Throws Error(invalid_argument) for d <= 3 or
/// non-positive eps, Error(infeasible_parameters) when theta <= 0.
ExponentRecord exponent_calculator(int d, const Rational& eps1, const Rational& eps2, const Rational& eps0 = 0);

struct ExponentChoice {
    double d = 12.0;
    double eps1 = 0.12;
    double eps2 = 0.01;
    double eps0 = 0.01;
};

/// I3 against the factor structure of its bound.
AuditReport i3_bound_audit(const Trajectory& run, const ExponentChoice& e);

/// Running X(t) = |Phi|_V + |Gamma|_V.
TimeSeriesNorm x_quantity(const Trajectory& run);
/// X(T)^2 against |v_phi|_{d,inf}^{4 eps/theta}(1 + |v_phi|_inf^{2 eps0}) + |v_phi|_{d,inf}^{2 eps/theta} + D8.
AuditReport x_closure_audit(const Trajectory& run, const DConstants& d, const ExponentChoice& e);

/// Two reports: u_z against D3^2 and u_r against the derivative-estimate D4^2.
std::vector<AuditReport> swirl_derivative_audit(const Trajectory& run, const DConstants& d);
/// |omega_r|_V^2 + |omega_z|_V^2 + |Phi|_2^2 against the vorticity estimate.
AuditReport omega_rz_audit(const Trajectory& run, const DConstants& d);

/// (int |f|^q / r^s)^(1/q) against |f|_p^(1 - alpha) |grad f|_p^alpha with
/// alpha = 3/p - (3 - s)/q. Throws Error(invalid_argument) outside
/// 1 < p <= 3, 0 <= s <= p, s <= 2, p <= q <= p (3 - s)/(3 - p).
AuditReport cfz_embedding_check(const ScalarField& f, double p, double s, double q);

/// Two reports: |Gamma/r|_{2,eps2} against |grad Gamma|_{2,eps2} (recorded) and
/// |grad Gamma|_{2,eps2} against R^eps2 |grad Gamma|_2 (explicit).
std::vector<AuditReport> hardy_check(const ScalarField& gamma, double eps2);

/// Bound on X(t) from the comparison ODE; nullopt when it breaks down.
std::optional<double> riccati_bound(double x0, double c0, double k0, double t);

struct OdeSample {
    double t;
    double x;
};

/// RK4 integration of dX/dt = -nu X + c0 X^2 + k0.
std::vector<OdeSample> riccati_surrogate(double nu, double c0, double k0, double x0, double t_end, int steps);

struct RiccatiOptions {
    /// Samples with X at or below this value do not enter the c0 estimate.
    double threshold = 1e-12;
    /// Lower bound on the c0 used for the bound.
    double c0_floor = 1.0;
    double tolerance = explicit_tolerance;
};

/// Measures c0 and k0 on the run and checks X_small(t) <= beta(T) and,
/// when the small-data premises hold, X_small(T) <= X_small(0).
AuditReport riccati_audit(const Trajectory& run, const RiccatiOptions& options = {});

/// Every trajectory audit, with run metadata attached.
std::vector<AuditReport> trajectory_audits(const Trajectory& run, const ExponentChoice& e);

}  // namespace axicyl
