/// @file elliptic.hpp
/// @brief Stream-function problems on the meridian plane and the audits of
/// their a-priori estimates.
///
/// Every problem is -L x = rhs with
///   L f = f_rr + (1 + drift)/r f_r + potential/r^2 f + f_zz,
/// zero at r = R, periodic in z. An FFT in z leaves one tridiagonal radial
/// system per mode.
#pragma once

#include <vector>

#include "axicyl/audit_report.hpp"
#include "axicyl/scalar_field.hpp"

namespace axicyl {

/// Coefficients of the radial operator and the parity of its unknown.
struct RadialOperator {
    double drift = 0.0;
    double potential = 0.0;
    Parity parity = Parity::even;
};

enum class EllipticKind {
    stream,        ///< -lap psi + psi/r^2 = omega_phi, psi odd
    stream_ratio,  ///< -lap psi1 - (2/r) psi1_r = omega1, psi1 even
    z_derivative,  ///< same operator, unknown is d_z psi1, rhs d_z omega1
};

const char* to_string(EllipticKind kind);

RadialOperator operator_for(EllipticKind kind);
/// lap + (2/r) d_r on even fields: vorticity ratios and the swirl ratio.
RadialOperator ratio_operator();
/// lap - (2/r) d_r on even fields: the swirl r v_phi.
RadialOperator swirl_operator();

struct EllipticProblem {
    EllipticKind kind = EllipticKind::stream_ratio;
    ScalarField rhs;
};

/// Relative residual above which a solve is reported as not converged.
inline constexpr double residual_tolerance = 1e-10;

struct SolveResult {
    ScalarField solution;
    double residual = 0.0;  ///< max |(-L x) - rhs| / max |rhs|
};

ScalarField solve(const EllipticProblem& problem);
SolveResult solve_with_residual(const EllipticProblem& problem);

/// Solves (sigma I - kappa L) x = rhs. sigma = 0, kappa = 1 is the elliptic
/// problem; sigma = 1, kappa = nu dt is one backward-Euler diffusion step.
ScalarField solve_shifted(const RadialOperator& op, const ScalarField& rhs, double sigma, double kappa);

/// The discrete L used by the solver (quadratic Dirichlet closure at R).
ScalarField apply_operator(const RadialOperator& op, const ScalarField& f);

/// max |(sigma I - kappa L) x - rhs| / max |rhs| (absolute when rhs = 0).
double relative_residual(const RadialOperator& op, const ScalarField& x, const ScalarField& rhs, double sigma,
                         double kappa);

/// Rows of a tridiagonal matrix; lower[0] and upper[n-1] are unused.
struct Tridiagonal {
    std::vector<double> lower;
    std::vector<double> diag;
    std::vector<double> upper;
};
/// The radial matrix of -L for z-mode m, closures folded in.
Tridiagonal radial_matrix(const RadialOperator& op, const Grid& grid, int mode);

/// Threshold on max |psi1(0, z)| / max |psi1| above which the axis-vanishing
/// hypothesis is treated as violated.
inline constexpr double axis_vanishing_threshold = 1e-2;

/// H^1 norm of psi1 against |omega1|_{6/5}.
AuditReport weak_estimate_audit(const ScalarField& omega1, const ScalarField& psi1);

/// Three reports: second derivatives against |omega1|_2^2, and two
/// third-derivative groups against |omega1_z|_2^2. Axis and wall line
/// integrals are itemised.
std::vector<AuditReport> h2_estimates_audit(const ScalarField& omega1, const ScalarField& psi1);

/// Two reports: |psi1_rz / r|_2 against |omega1_z|_2, and the singular
/// weighted group (psi1_zz/r, psi1_zrr, psi1_zr/r, psi1_z/r^2) against
/// |omega1_z|_2^2, flagged inapplicable when psi1 does not vanish on the axis.
std::vector<AuditReport> mixed_weight_audit(const ScalarField& omega1, const ScalarField& psi1,
                                            double axis_threshold = axis_vanishing_threshold);

/// r^(2 mu)-weighted (psi1_rrr, psi1_rr/r, psi1_r/r^2) against R^(2 mu) ||omega1||_1^2.
AuditReport weighted_third_order_audit(const ScalarField& omega1, const ScalarField& psi1, double mu);

}  // namespace axicyl
