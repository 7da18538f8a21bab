#include "axicyl/elliptic.hpp"

#include <algorithm>
#include <cmath>
#include <complex>

#include "axicyl/error.hpp"
#include "axicyl/norms.hpp"
#include "axicyl/operators.hpp"
#include "axicyl/parallel.hpp"
#include "axicyl/spectral.hpp"

namespace axicyl {

const char* to_string(EllipticKind kind) {
    switch (kind) {
    case EllipticKind::stream: return "stream";
    case EllipticKind::stream_ratio: return "stream-ratio";
    case EllipticKind::z_derivative: return "z-derivative";
    }
    return "stream-ratio";
}

RadialOperator operator_for(EllipticKind kind) {
    if (kind == EllipticKind::stream) return {0.0, -1.0, Parity::odd};
    return ratio_operator();
}

RadialOperator ratio_operator() { return {2.0, 0.0, Parity::even}; }

RadialOperator swirl_operator() { return {-2.0, 0.0, Parity::even}; }

namespace {

/// Stencil of L at row j before closures: f_{j-1}, f_j, f_{j+1}.
struct RowStencil {
    double lower;
    double diag;
    double upper;
};

RowStencil radial_row(const RadialOperator& op, const Grid& g, int j) {
    const double h = g.dr();
    const double r = g.r(j);
    const double flux = 1.0 / (r * h * h);
    const double drift = op.drift / (2.0 * h * r);
    return {g.r_face(j) * flux - drift, -(g.r_face(j) + g.r_face(j + 1)) * flux + op.potential / (r * r),
            g.r_face(j + 1) * flux + drift};
}

/// Ghost f_N through 0 at R and the last two cells.
constexpr double wall_ghost_last = -2.0;
constexpr double wall_ghost_prev = 1.0 / 3.0;

}  // namespace

Tridiagonal radial_matrix(const RadialOperator& op, const Grid& g, int mode) {
    const int n = g.nr();
    const double sign = op.parity == Parity::even ? 1.0 : -1.0;
    const double zz = g.zz_symbol(mode);
    Tridiagonal m;
    m.lower.assign(static_cast<std::size_t>(n), 0.0);
    m.diag.assign(static_cast<std::size_t>(n), 0.0);
    m.upper.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        RowStencil s = radial_row(op, g, j);
        if (j == 0) {
            s.diag += sign * s.lower;
            s.lower = 0.0;
        }
        if (j == n - 1) {
            s.diag += wall_ghost_last * s.upper;
            s.lower += wall_ghost_prev * s.upper;
            s.upper = 0.0;
        }
        const auto u = static_cast<std::size_t>(j);
        m.lower[u] = -s.lower;
        m.diag[u] = -s.diag + zz;
        m.upper[u] = -s.upper;
    }
    return m;
}

ScalarField solve_shifted(const RadialOperator& op, const ScalarField& rhs, double sigma, double kappa) {
    if (rhs.empty()) throw Error(ErrorKind::missing_boundary_tag, "right-hand side has no grid");
    if (!rhs.all_finite()) throw Error(ErrorKind::numerical_failure, "right-hand side is not finite");
    const Grid& g = rhs.grid();
    const int n = g.nr();
    const ZFourier& fft = ZFourier::for_grid(g);
    const int modes = fft.modes();
    std::vector<std::complex<double>> hat(static_cast<std::size_t>(n) * modes);
    fft.forward(rhs.values(), hat);

    parallel_for(modes, [&](int m) {
        const Tridiagonal a = radial_matrix(op, g, m);
        // Thomas algorithm on sigma I + kappa (-L).
        std::vector<double> c(static_cast<std::size_t>(n));
        std::vector<std::complex<double>> d(static_cast<std::size_t>(n));
        const auto at = [&](int j) -> std::complex<double>& { return hat[static_cast<std::size_t>(j) * modes + m]; };
        double denom = sigma + kappa * a.diag[0];
        c[0] = kappa * a.upper[0] / denom;
        d[0] = at(0) / denom;
        for (int j = 1; j < n; ++j) {
            const auto u = static_cast<std::size_t>(j);
            const double low = kappa * a.lower[u];
            denom = sigma + kappa * a.diag[u] - low * c[u - 1];
            c[u] = kappa * a.upper[u] / denom;
            d[u] = (at(j) - low * d[u - 1]) / denom;
        }
        at(n - 1) = d[static_cast<std::size_t>(n - 1)];
        for (int j = n - 2; j >= 0; --j) {
            const auto u = static_cast<std::size_t>(j);
            at(j) = d[u] - c[u] * at(j + 1);
        }
    });

    ScalarField out(rhs.grid_ptr(), op.parity, OuterBc::dirichlet);
    fft.inverse(hat, out.values());
    return out;
}

ScalarField apply_operator(const RadialOperator& op, const ScalarField& f) {
    const Grid& g = f.grid();
    const int n = g.nr();
    const double sign = op.parity == Parity::even ? 1.0 : -1.0;
    ScalarField out = d_zz(f.retagged(op.parity, OuterBc::dirichlet));
    for (int j = 0; j < n; ++j) {
        const RowStencil s = radial_row(op, g, j);
        for (int k = 0; k < g.nz(); ++k) {
            const double below = j == 0 ? sign * f(0, k) : f(j - 1, k);
            const double above =
                j == n - 1 ? wall_ghost_last * f(n - 1, k) + wall_ghost_prev * f(n - 2, k) : f(j + 1, k);
            out(j, k) += s.lower * below + s.diag * f(j, k) + s.upper * above;
        }
    }
    return out.retagged(op.parity, OuterBc::free);
}

double relative_residual(const RadialOperator& op, const ScalarField& x, const ScalarField& rhs, double sigma,
                         double kappa) {
    require_same_grid(x, rhs);
    const ScalarField lx = apply_operator(op, x);
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        worst = std::max(worst, std::abs(sigma * x[i] - kappa * lx[i] - rhs[i]));
    }
    const double scale = rhs.max_abs();
    return scale > 0.0 ? worst / scale : worst;
}

SolveResult solve_with_residual(const EllipticProblem& problem) {
    const RadialOperator op = operator_for(problem.kind);
    if (!problem.rhs.empty() && problem.rhs.parity() != op.parity) {
        throw Error(ErrorKind::parity_mismatch, std::string("right-hand side parity does not match the ") +
                                                    to_string(problem.kind) + " problem");
    }
    SolveResult result;
    result.solution = solve_shifted(op, problem.rhs, 0.0, 1.0);
    result.residual = relative_residual(op, result.solution, problem.rhs, 0.0, 1.0);
    if (result.residual > residual_tolerance) {
        // One step of iterative refinement before giving up.
        ScalarField defect = problem.rhs;
        const ScalarField lx = apply_operator(op, result.solution);
        for (std::size_t i = 0; i < defect.size(); ++i) defect[i] += lx[i];
        result.solution += solve_shifted(op, defect, 0.0, 1.0);
        result.residual = relative_residual(op, result.solution, problem.rhs, 0.0, 1.0);
        if (result.residual > residual_tolerance) {
            throw Error(ErrorKind::non_convergence,
                        "elliptic residual " + std::to_string(result.residual) + " above tolerance");
        }
    }
    return result;
}

ScalarField solve(const EllipticProblem& problem) { return solve_with_residual(problem).solution; }

namespace {

double squared(const ScalarField& f) {
    const double n = lp_norm(f, 2.0);
    return n * n;
}

double weighted_squared(const ScalarField& f, double s) {
    const double n = weighted_l2(f, s);
    return n * n;
}

double line_squared(const std::vector<double>& trace, double dz) {
    double s = 0.0;
    for (double v : trace) s += v * v;
    return s * dz;
}

void describe(AuditReport& r, const Grid& g) { r.metadata["grid"] = g.descriptor(); }

}  // namespace

AuditReport weak_estimate_audit(const ScalarField& omega1, const ScalarField& psi1) {
    require_same_grid(omega1, psi1);
    AuditReport r = recorded_audit("stream-ratio-weak", 0.0, 0.0);
    r.lhs_terms = {{"psi1 H1 norm", h1_norm(psi1)}};
    r.rhs_terms = {{"omega1 L6/5 norm", lp_norm(omega1, 1.2)}};
    r.total();
    if (r.lhs == 0.0) r.verdict = Verdict::pass;
    describe(r, psi1.grid());
    return r;
}

std::vector<AuditReport> h2_estimates_audit(const ScalarField& omega1, const ScalarField& psi1) {
    require_same_grid(omega1, psi1);
    const Grid& g = psi1.grid();
    const double dz = g.dz();
    const ScalarField pr = d_r(psi1);
    const ScalarField pz = d_z(psi1);
    const ScalarField prr = d_rr(psi1);
    const ScalarField prz = d_z(pr);
    const ScalarField pzz = d_zz(psi1);
    const ScalarField pzzr = d_r(pzz);
    const ScalarField pzzz = d_z(pzz);
    const ScalarField prrz = d_z(prr);
    const ScalarField przz = d_zz(pr);
    const double omega_sq = squared(omega1);
    const double omega_z_sq = squared(d_z(omega1));
    const double axis_pzz = line_squared(trace_at_axis(pzz), dz);

    std::vector<AuditReport> out(3);
    out[0].id = "stream-ratio-second-order";
    out[0].lhs_terms = {{"psi1_rr^2", squared(prr)},
                        {"psi1_rz^2", squared(prz)},
                        {"psi1_zz^2", squared(pzz)},
                        {"psi1_r^2/r^2", weighted_squared(pr, -1.0)},
                        {"axis psi1_z^2", line_squared(trace_at_axis(pz), dz)},
                        {"wall psi1_r^2", line_squared(trace_at_R(pr), dz)}};
    out[0].rhs_terms = {{"|omega1|_2^2", omega_sq}};

    out[1].id = "stream-ratio-third-order-z";
    out[1].lhs_terms = {{"psi1_zzr^2", squared(pzzr)}, {"psi1_zzz^2", squared(pzzz)}, {"axis psi1_zz^2", axis_pzz}};
    out[1].rhs_terms = {{"|omega1_z|_2^2", omega_z_sq}};

    out[2].id = "stream-ratio-third-order-mixed";
    out[2].lhs_terms = {{"psi1_rrz^2", squared(prrz)},
                        {"psi1_rzz^2", squared(przz)},
                        {"psi1_zzz^2", squared(pzzz)},
                        {"axis psi1_zz^2", axis_pzz},
                        {"wall psi1_rz^2", line_squared(trace_at_R(d_r(pz)), dz)}};
    out[2].rhs_terms = {{"|omega1_z|_2^2", omega_z_sq}};

    for (AuditReport& r : out) {
        r.verdict = Verdict::ratio_recorded;
        r.total();
        if (r.lhs == 0.0) r.verdict = Verdict::pass;
        describe(r, g);
    }
    return out;
}

std::vector<AuditReport> mixed_weight_audit(const ScalarField& omega1, const ScalarField& psi1,
                                            double axis_threshold) {
    require_same_grid(omega1, psi1);
    const Grid& g = psi1.grid();
    const ScalarField pz = d_z(psi1);
    const ScalarField pzr = d_r(pz);
    const ScalarField omega_z = d_z(omega1);

    std::vector<AuditReport> out(2);
    out[0].id = "stream-ratio-mixed-weight";
    out[0].lhs_terms = {{"|psi1_rz/r|_2", weighted_l2(pzr, -1.0)}};
    out[0].rhs_terms = {{"|omega1_z|_2", lp_norm(omega_z, 2.0)}};

    out[1].id = "stream-ratio-axis-weighted";
    out[1].lhs_terms = {{"psi1_zz^2/r^2", weighted_squared(d_zz(psi1), -1.0)},
                        {"psi1_zrr^2", squared(d_rr(pz))},
                        {"psi1_zr^2/r^2", weighted_squared(pzr, -1.0)},
                        {"psi1_z^2/r^4", weighted_squared(pz, -2.0)}};
    out[1].rhs_terms = {{"|omega1_z|_2^2", squared(omega_z)}};

    double axis = 0.0;
    for (double v : trace_at_axis(psi1)) axis = std::max(axis, std::abs(v));
    const double scale = psi1.max_abs();
    const double relative_axis = scale > 0.0 ? axis / scale : 0.0;

    for (AuditReport& r : out) {
        r.verdict = Verdict::ratio_recorded;
        r.total();
        if (r.lhs == 0.0) r.verdict = Verdict::pass;
        describe(r, g);
        r.metadata["axis_value_relative"] = std::to_string(relative_axis);
    }
    if (relative_axis > axis_threshold && out[1].lhs != 0.0) out[1].verdict = Verdict::inapplicable;
    return out;
}

AuditReport weighted_third_order_audit(const ScalarField& omega1, const ScalarField& psi1, double mu) {
    require_same_grid(omega1, psi1);
    if (!(mu > 0.0 && mu < 1.0)) throw Error(ErrorKind::invalid_argument, "weight exponent must lie in (0,1)");
    const Grid& g = psi1.grid();
    const ScalarField pr = d_r(psi1);
    AuditReport r;
    r.id = "stream-ratio-weighted-third-order";
    r.lhs_terms = {{"r^2mu psi1_rrr^2", weighted_squared(d_rrr(psi1), mu)},
                   {"r^2mu psi1_rr^2/r^2", weighted_squared(d_rr(psi1), mu - 1.0)},
                   {"r^2mu psi1_r^2/r^4", weighted_squared(pr, mu - 2.0)}};
    const double h1 = h1_norm(omega1);
    r.rhs_terms = {{"R^2mu ||omega1||_1^2", std::pow(g.radius(), 2.0 * mu) * h1 * h1}};
    r.verdict = Verdict::ratio_recorded;
    r.total();
    if (r.lhs == 0.0) r.verdict = Verdict::pass;
    describe(r, g);
    r.metadata["mu"] = std::to_string(mu);
    return r;
}

}  // namespace axicyl
