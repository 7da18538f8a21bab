#include "axicyl/auditor.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "axicyl/error.hpp"
#include "axicyl/operators.hpp"

namespace axicyl {

namespace {

std::string num(double v) {
    std::ostringstream s;
    s.precision(17);
    s << v;
    return s.str();
}

double integral(const std::vector<double>& t, const std::vector<double>& v) {
    return cumulative_trapezoid(t, v).back();
}

double integral(const Trajectory& run, double Sample::*m) { return integral(run.times(), run.column(m)); }

double integral_of_square(const Trajectory& run, double Sample::*m) {
    std::vector<double> v = run.column(m);
    for (double& x : v) x *= x;
    return integral(run.times(), v);
}

double sup(const Trajectory& run, double Sample::*m) {
    const auto v = run.column(m);
    return *std::max_element(v.begin(), v.end());
}

double initial(const Trajectory& run, double Sample::*m) { return run.samples.front().*m; }

void require_run(const Trajectory& run) {
    if (run.samples.size() < 2) throw Error(ErrorKind::empty_series, "trajectory needs at least two samples");
}

void describe(AuditReport& r, const Trajectory& run) {
    for (const auto& [k, v] : run.metadata) r.metadata[k] = v;
    r.metadata["t_range"] = num(run.samples.front().t) + ":" + num(run.samples.back().t);
    r.metadata["nu"] = num(run.options.dynamics.nu);
}

/// Ratio-recorded report from itemised terms; a zero left side passes.
AuditReport recorded(std::string id, std::vector<AuditTerm> lhs, std::vector<AuditTerm> rhs) {
    AuditReport r = recorded_audit(std::move(id), 0.0, 0.0);
    r.lhs_terms = std::move(lhs);
    r.rhs_terms = std::move(rhs);
    r.total();
    if (r.lhs == 0.0) r.verdict = Verdict::pass;
    return r;
}

AuditReport checked(std::string id, std::vector<AuditTerm> lhs, std::vector<AuditTerm> rhs, double tolerance) {
    AuditReport tmp;
    tmp.lhs_terms = lhs;
    tmp.rhs_terms = rhs;
    tmp.total();
    AuditReport r = explicit_audit(std::move(id), tmp.lhs, tmp.rhs, tolerance);
    r.lhs_terms = std::move(lhs);
    r.rhs_terms = std::move(rhs);
    return r;
}

/// sup_t |w|_2 + (int |grad w|_2^2)^(1/2) from squared samples.
double energy_space_norm(const Trajectory& run, double Sample::*value_sq, double Sample::*grad_sq) {
    return std::sqrt(sup(run, value_sq)) + std::sqrt(integral(run, grad_sq));
}

double scaled_power_sum(double a, double b, double p) {
    const double m = std::max(a, b);
    if (m == 0.0) return 0.0;
    return m * std::pow(std::pow(a / m, p) + std::pow(b / m, p), 1.0 / p);
}

struct ExponentValues {
    double eps;
    double theta;
};

ExponentValues exponents(const ExponentChoice& e) {
    if (!(e.d > 3.0)) throw Error(ErrorKind::invalid_argument, "d must exceed 3");
    if (!(e.eps1 > 0.0) || !(e.eps2 > 0.0)) throw Error(ErrorKind::invalid_argument, "eps1 and eps2 must be positive");
    const double theta = (1.0 - 3.0 / e.d) * e.eps1 - (3.0 / e.d) * e.eps2;
    if (!(theta > 0.0)) throw Error(ErrorKind::infeasible_parameters, "theta must be positive");
    return {e.eps1 + e.eps2, theta};
}

double ld_sup(const Trajectory& run, const ExponentChoice& e) {
    if (e.d != run.options.d_exponent) {
        throw Error(ErrorKind::invalid_argument, "run monitored L_d with d=" + num(run.options.d_exponent) +
                                                     ", audit asked for d=" + num(e.d));
    }
    return sup(run, &Sample::v_phi_ld);
}

void describe_exponents(AuditReport& r, const ExponentChoice& e) {
    r.metadata["d"] = num(e.d);
    r.metadata["eps0"] = num(e.eps0);
    r.metadata["eps1"] = num(e.eps1);
    r.metadata["eps2"] = num(e.eps2);
}

}  // namespace

bool DConstants::all_finite() const {
    for (double v : {d1, d1_sum, d2, d3, d4, d4_estimate, d5, d5_vorticity, d6, d7, d8, d9, d9_linear, d10}) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

DConstants compute_d_constants(const Trajectory& run, double eps0) {
    require_run(run);
    DConstants d;
    d.eps0 = eps0;
    d.force_l2_l1 = integral(run, &Sample::force_l2);
    d.force_l2_l2 = std::sqrt(integral_of_square(run, &Sample::force_l2));
    d.v0_l2 = std::sqrt(initial(run, &Sample::kinetic_sq));
    d.d1 = std::sqrt(3.0 * d.force_l2_l1 * d.force_l2_l1 + 2.0 * d.v0_l2 * d.v0_l2);
    d.d1_sum = d.force_l2_l2 + d.v0_l2;

    d.f0_sup_l1 = integral(run, &Sample::f0_sup);
    d.u0_sup = initial(run, &Sample::swirl_sup);
    d.d2 = d.f0_sup_l1 + d.u0_sup;

    d.uz0_sq = initial(run, &Sample::uz_sq);
    d.ur0_sq = initial(run, &Sample::ur_sq);
    d.f0_l2_l2_sq = integral(run, &Sample::f0_sq);
    d.f0_wall_l2 = std::sqrt(integral_of_square(run, &Sample::f0_wall_l43));
    const double d1sq = d.d1 * d.d1;
    d.d3 = std::sqrt(d1sq * d.d2 * d.d2 + d.uz0_sq + d.f0_l2_l2_sq);
    d.d4 = std::sqrt(d1sq * (1.0 + d.d2) + d.ur0_sq + d.f0_l2_l2_sq + d.f0_wall_l2);
    d.d4_estimate =
        std::sqrt(d1sq * (1.0 + d.d2 * d.d2) + d.ur0_sq + d.f0_l2_l2_sq + d.f0_wall_l2 * d.f0_wall_l2);
    d.d5 = d.d2 * (d.d1 + d.d2 + d.d3);
    d.d5_vorticity = d.d2 * (d.d1 + d.d3 + d.d4);
    d.d6 = std::pow(d.d2, 1.0 - eps0) * d.d3;

    d.curl_sq = integral_of_square(run, &Sample::curl_r_l65) + integral_of_square(run, &Sample::curl_z_l65);
    d.vorticity0_sq = initial(run, &Sample::omega_r_sq) + initial(run, &Sample::omega_z_sq);
    d.d7 = d.curl_sq + d.vorticity0_sq;

    d.ratio_sources_sq =
        integral_of_square(run, &Sample::phi_source_l65) + integral_of_square(run, &Sample::gamma_source_l65);
    d.phi0_sq = initial(run, &Sample::phi_sq);
    d.gamma0_sq = initial(run, &Sample::gamma_sq);
    d.d8 = d.ratio_sources_sq + d.phi0_sq + d.gamma0_sq;

    {
        const auto t = run.times();
        auto v = run.column(&Sample::f_phi_l3625);
        const double scale = *std::max_element(v.begin(), v.end());
        if (scale > 0.0) {
            for (double& x : v) x = std::pow(x / scale, 12.0);
            d.f_phi_l12 = scale * std::pow(integral(t, v), 1.0 / 12.0);
        }
    }
    d.v_phi0_l12 = initial(run, &Sample::v_phi_l12);
    d.d9 = scaled_power_sum(std::pow(144.0, 1.0 / 12.0) * d.f_phi_l12, d.v_phi0_l12, 12.0);
    d.d9_linear = 12.0 * d.f_phi_l12 + d.v_phi0_l12;

    d.f1_sup_l1 = integral(run, &Sample::f1_sup);
    d.v_phi0_sup = initial(run, &Sample::v_phi_sup);
    d.d10 = d.f1_sup_l1 + d.v_phi0_sup;

    if (!d.all_finite()) throw Error(ErrorKind::numerical_failure, "a data constant is not finite");
    return d;
}

AuditReport energy_audit(const Trajectory& run, const DConstants& d) {
    require_run(run);
    const double nu = run.options.dynamics.nu;
    const auto t = run.times();
    auto rate = run.column(&Sample::dissipation_sq);
    auto axis = run.column(&Sample::axis_phi_sq);
    auto axis_z = run.column(&Sample::axis_z_sq);
    const auto diss_acc = cumulative_trapezoid(t, rate);
    const auto axis_acc = cumulative_trapezoid(t, axis);
    const auto axis_z_acc = cumulative_trapezoid(t, axis_z);
    std::size_t worst = 0;
    double worst_value = -1.0;
    double printed_worst = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double kinetic = run.samples[i].kinetic_sq;
        const double value = kinetic + nu * (diss_acc[i] + axis_acc[i]);
        if (value > worst_value) {
            worst_value = value;
            worst = i;
        }
        printed_worst = std::max(printed_worst, kinetic + nu * (diss_acc[i] + axis_z_acc[i]));
    }
    AuditReport r = checked("energy",
                            {{"|v(t)|^2", run.samples[worst].kinetic_sq},
                             {"nu int |grad v|^2", nu * diss_acc[worst]},
                             {"nu int (v_r^2 + v_phi^2)/r^2", nu * axis_acc[worst]}},
                            {{"3 |f|_{2,1}^2", 3.0 * d.force_l2_l1 * d.force_l2_l1},
                             {"2 |v(0)|^2", 2.0 * d.v0_l2 * d.v0_l2}},
                            explicit_tolerance);
    describe(r, run);
    r.metadata["t_at_max"] = num(t[worst]);
    r.metadata["lhs_with_v_z_axis_term"] = num(printed_worst);
    return r;
}

AuditReport swirl_audit(const Trajectory& run, const DConstants& d, double tolerance) {
    require_run(run);
    AuditReport r = checked("swirl-maximum", {{"sup |u|", sup(run, &Sample::swirl_sup)}},
                            {{"|f0|_{inf,1}", d.f0_sup_l1}, {"|u(0)|_inf", d.u0_sup}}, tolerance);
    describe(r, run);
    return r;
}

AuditReport l4_audit(const Trajectory& run, const DConstants& d) {
    require_run(run);
    const double nu = run.options.dynamics.nu;
    const double full = integral(run, &Sample::v_l4_4);
    AuditReport r = checked("l4-swirl", {{"int int v_phi^4", integral(run, &Sample::v_phi_l4_4)}},
                            {{"D2^2 D1^2 / nu", d.d2 * d.d2 * d.d1 * d.d1 / nu}}, explicit_tolerance);
    describe(r, run);
    r.metadata["full_velocity_l4_4"] = num(full);
    r.metadata["full_velocity_ratio"] = num(safe_ratio(full, r.rhs));
    return r;
}

AuditReport phi_gamma_audit(const Trajectory& run, const DConstants& d) {
    require_run(run);
    const double nu = run.options.dynamics.nu;
    const auto t = run.times();
    double sup_energy = 0.0;
    for (const Sample& s : run.samples) sup_energy = std::max(sup_energy, s.phi_sq + s.gamma_sq);
    const double h1 = integral(run, &Sample::phi_sq) + integral(run, &Sample::grad_phi_sq) +
                      integral(run, &Sample::gamma_sq) + integral(run, &Sample::grad_gamma_sq);
    AuditReport r = recorded("phi-gamma-energy",
                             {{"sup (|Phi|^2 + |Gamma|^2)", sup_energy}, {"nu (|Phi|_{1,2}^2 + |Gamma|_{1,2}^2)", nu * h1}},
                             {{"I3", integral(run, &Sample::interaction)}, {"D8", d.d8}});
    describe(r, run);
    return r;
}

namespace {

/// Decimal digits as an integer. cpp_int reads a leading 0 as octal.
boost::multiprecision::cpp_int decimal_integer(std::string digits) {
    std::string sign;
    if (!digits.empty() && (digits[0] == '-' || digits[0] == '+')) {
        sign = digits.substr(0, 1);
        digits = digits.substr(1);
    }
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) {
        throw std::runtime_error("not decimal");
    }
    const auto first = digits.find_first_not_of('0');
    digits = first == std::string::npos ? "0" : digits.substr(first);
    return boost::multiprecision::cpp_int(sign + digits);
}

}  // namespace

Rational parse_rational(const std::string& text) {
    const auto bad = [&] { return Error(ErrorKind::invalid_argument, "not a rational number: '" + text + "'"); };
    if (text.empty()) throw bad();
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            const auto p = decimal_integer(text.substr(0, slash));
            const auto q = decimal_integer(text.substr(slash + 1));
            if (q == 0) throw bad();
            return Rational(p, q);
        }
        std::string s = text;
        bool negative = false;
        if (s[0] == '-' || s[0] == '+') {
            negative = s[0] == '-';
            s = s.substr(1);
        }
        const auto dot = s.find('.');
        std::string digits = s;
        boost::multiprecision::cpp_int den = 1;
        if (dot != std::string::npos) {
            digits = s.substr(0, dot) + s.substr(dot + 1);
            for (std::size_t i = dot + 1; i < s.size(); ++i) den *= 10;
        }
        if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos) throw bad();
        Rational q(decimal_integer(digits), den);
        return negative ? Rational(-q) : q;
    } catch (const std::runtime_error&) {
        throw bad();
    }
}

std::string format_rational(const Rational& q) {
    const auto n = boost::multiprecision::numerator(q);
    const auto d = boost::multiprecision::denominator(q);
    if (d == 1) return n.str();
    return n.str() + "/" + d.str();
}

ExponentRecord exponent_calculator(int d, const Rational& eps1, const Rational& eps2, const Rational& eps0) {
    if (d <= 3) throw Error(ErrorKind::invalid_argument, "d must exceed 3");
    if (eps1 <= 0 || eps2 <= 0) throw Error(ErrorKind::invalid_argument, "eps1 and eps2 must be positive");
    ExponentRecord e;
    e.d = d;
    e.eps1 = eps1;
    e.eps2 = eps2;
    e.eps = eps1 + eps2;
    e.eps0 = eps0;
    const Rational three_over_d(3, d);
    e.theta = (1 - three_over_d) * eps1 - three_over_d * eps2;
    if (e.theta <= 0) throw Error(ErrorKind::infeasible_parameters, "theta = " + format_rational(e.theta) + " <= 0");
    e.theta_positive = true;
    e.delta = 4 * e.eps / e.theta;
    e.delta0 = 2 * e.eps / e.theta;
    e.upper_restriction = 1 + three_over_d * eps2 > (1 - three_over_d) * eps1;
    e.closing_condition = e.delta < 6;
    e.eps_ratio_condition = eps1 > 11 * eps2;
    return e;
}

AuditReport i3_bound_audit(const Trajectory& run, const ExponentChoice& e) {
    require_run(run);
    const ExponentValues x = exponents(e);
    const double vd = ld_sup(run, e);
    const double vinf = sup(run, &Sample::v_phi_sup);
    const double gamma_h1 = std::sqrt(integral(run, &Sample::gamma_sq) + integral(run, &Sample::grad_gamma_sq));
    const double grad_phi = std::sqrt(integral(run, &Sample::grad_phi_sq));
    const double grad_gamma = std::sqrt(integral(run, &Sample::grad_gamma_sq));
    const double bracket = (1.0 + std::pow(vinf, 0.5 * x.theta * e.eps0)) * std::pow(gamma_h1, 0.5 * x.theta) + 1.0;
    const double rhs = std::pow(vd, x.eps) * bracket * std::pow(grad_phi, 1.0 - x.theta) * grad_gamma;
    AuditReport r = recorded("interaction-bound", {{"I3", integral(run, &Sample::interaction)}}, {{"factor bound", rhs}});
    describe(r, run);
    describe_exponents(r, e);
    r.metadata["theta"] = num(x.theta);
    return r;
}

TimeSeriesNorm x_quantity(const Trajectory& run) {
    require_run(run);
    TimeSeriesNorm out;
    out.times = run.times();
    out.reduction = TimeSeriesNorm::Reduction::sup;
    const auto gp = cumulative_trapezoid(out.times, run.column(&Sample::grad_phi_sq));
    const auto gg = cumulative_trapezoid(out.times, run.column(&Sample::grad_gamma_sq));
    double sp = 0.0;
    double sg = 0.0;
    for (std::size_t i = 0; i < out.times.size(); ++i) {
        sp = std::max(sp, std::sqrt(run.samples[i].phi_sq));
        sg = std::max(sg, std::sqrt(run.samples[i].gamma_sq));
        out.values.push_back(sp + std::sqrt(gp[i]) + sg + std::sqrt(gg[i]));
    }
    return out;
}

AuditReport x_closure_audit(const Trajectory& run, const DConstants& d, const ExponentChoice& e) {
    const ExponentValues x = exponents(e);
    const double vd = ld_sup(run, e);
    const double vinf = sup(run, &Sample::v_phi_sup);
    const double big_x = x_quantity(run).values.back();
    AuditReport r = recorded(
        "x-closure", {{"X(T)^2", big_x * big_x}},
        {{"|v_phi|_{d,inf}^(4eps/theta) (1 + |v_phi|_inf^(2eps0))",
          std::pow(vd, 4.0 * x.eps / x.theta) * (1.0 + std::pow(vinf, 2.0 * e.eps0))},
         {"|v_phi|_{d,inf}^(2eps/theta)", std::pow(vd, 2.0 * x.eps / x.theta)},
         {"D8", d.d8}});
    describe(r, run);
    describe_exponents(r, e);
    return r;
}

std::vector<AuditReport> swirl_derivative_audit(const Trajectory& run, const DConstants& d) {
    require_run(run);
    const double nu = run.options.dynamics.nu;
    AuditReport z = recorded("swirl-z-derivative",
                             {{"sup |u_z|^2", sup(run, &Sample::uz_sq)}, {"nu |grad u_z|^2", nu * integral(run, &Sample::grad_uz_sq)}},
                             {{"D3^2", d.d3 * d.d3}});
    AuditReport rr = recorded("swirl-r-derivative",
                              {{"sup |u_r|^2", sup(run, &Sample::ur_sq)},
                               {"nu (|u_rr|^2 + |u_rz|^2)",
                                nu * (integral(run, &Sample::urr_sq) + integral(run, &Sample::urz_sq))}},
                              {{"D4^2", d.d4_estimate * d.d4_estimate}});
    describe(z, run);
    describe(rr, run);
    rr.metadata["D4_listed_form"] = num(d.d4);
    return {z, rr};
}

AuditReport omega_rz_audit(const Trajectory& run, const DConstants& d) {
    require_run(run);
    const double vr = energy_space_norm(run, &Sample::omega_r_sq, &Sample::grad_omega_r_sq);
    const double vz = energy_space_norm(run, &Sample::omega_z_sq, &Sample::grad_omega_z_sq);
    const double gamma_z = std::sqrt(integral(run, &Sample::gamma_z_sq));
    const double gamma_h1 = std::sqrt(integral(run, &Sample::gamma_sq) + integral(run, &Sample::grad_gamma_sq));
    const double vinf = sup(run, &Sample::v_phi_sup);
    AuditReport r = recorded("meridian-vorticity",
                             {{"|omega_r|_V^2", vr * vr}, {"|omega_z|_V^2", vz * vz}, {"|Phi|_2^2", integral(run, &Sample::phi_sq)}},
                             {{"D5 |Gamma_z|_2", d.d5_vorticity * gamma_z},
                              {"D6 |v_phi|_inf^eps0 |Gamma|_{1,2}", d.d6 * std::pow(vinf, d.eps0) * gamma_h1},
                              {"D7", d.d7}});
    describe(r, run);
    r.metadata["D5_listed_form"] = num(d.d5);
    r.metadata["D5_used"] = num(d.d5_vorticity);
    return r;
}

AuditReport cfz_embedding_check(const ScalarField& f, double p, double s, double q) {
    if (!(p > 1.0 && p <= 3.0)) throw Error(ErrorKind::invalid_argument, "need 1 < p <= 3");
    if (!(s >= 0.0 && s <= p && s <= 2.0)) throw Error(ErrorKind::invalid_argument, "need 0 <= s <= min(p, 2)");
    const double q_max = p == 3.0 ? std::numeric_limits<double>::infinity() : p * (3.0 - s) / (3.0 - p);
    if (!(q >= p && q <= q_max)) throw Error(ErrorKind::invalid_argument, "q outside [p, p(3-s)/(3-p)]");
    const Grid& g = f.grid();
    double acc = 0.0;
    for (int j = 0; j < g.nr(); ++j) {
        const double w = g.weight(j) * std::pow(g.r(j), -s);
        for (int k = 0; k < g.nz(); ++k) acc += w * std::pow(std::abs(f(j, k)), q);
    }
    const double alpha = 3.0 / p - (3.0 - s) / q;
    const double fp = lp_norm(f, p);
    const double gp = lp_norm(gradient_magnitude(f), p);
    const double rhs = (fp == 0.0 && gp == 0.0) ? 0.0 : std::pow(fp, 1.0 - alpha) * std::pow(gp, alpha);
    AuditReport r = recorded("weighted-embedding", {{"(int |f|^q / r^s)^(1/q)", std::pow(acc, 1.0 / q)}},
                             {{"|f|_p^(1-alpha) |grad f|_p^alpha", rhs}});
    r.metadata["grid"] = g.descriptor();
    r.metadata["p"] = num(p);
    r.metadata["s"] = num(s);
    r.metadata["q"] = num(q);
    return r;
}

std::vector<AuditReport> hardy_check(const ScalarField& gamma, double eps2) {
    if (!(eps2 > 0.0)) throw Error(ErrorKind::invalid_argument, "eps2 must be positive");
    const Grid& g = gamma.grid();
    const ScalarField gr = d_r(gamma);
    const ScalarField gz = d_z(gamma);
    const double a = weighted_l2(scale_by_r(gamma, -1), eps2);
    const double b = std::hypot(weighted_l2(gr, eps2), weighted_l2(gz, eps2));
    const double c = std::pow(g.radius(), eps2) * std::hypot(lp_norm(gr, 2.0), lp_norm(gz, 2.0));
    AuditReport hardy = recorded("hardy-weighted", {{"|Gamma/r|_{2,eps2}", a}}, {{"|grad Gamma|_{2,eps2}", b}});
    AuditReport bound = checked("hardy-weight-bound", {{"|grad Gamma|_{2,eps2}", b}},
                                {{"R^eps2 |grad Gamma|_2", c}}, explicit_tolerance);
    for (AuditReport* r : {&hardy, &bound}) {
        r->metadata["grid"] = g.descriptor();
        r->metadata["eps2"] = num(eps2);
    }
    return {hardy, bound};
}

std::optional<double> riccati_bound(double x0, double c0, double k0, double t) {
    if (!(c0 > 0.0) || k0 < 0.0 || x0 < 0.0 || t < 0.0) {
        throw Error(ErrorKind::invalid_argument, "comparison bound needs c0 > 0 and non-negative x0, k0, t");
    }
    if (k0 == 0.0) {
        const double den = 1.0 - x0 * c0 * t;
        if (!(den > 0.0)) return std::nullopt;
        return x0 / den;
    }
    const double sk = std::sqrt(k0);
    const double y = c0 * sk * t;
    if (y >= 0.5 * std::numbers::pi) return std::nullopt;
    const double ty = std::tan(y);
    const double den = 1.0 - (x0 / sk) * ty;
    if (!(den > 0.0)) return std::nullopt;
    return (ty + x0 / sk) * sk / den;
}

std::vector<OdeSample> riccati_surrogate(double nu, double c0, double k0, double x0, double t_end, int steps) {
    if (steps < 1 || !(t_end > 0.0)) throw Error(ErrorKind::invalid_argument, "need steps >= 1 and t_end > 0");
    const auto rhs = [&](double x) { return -nu * x + c0 * x * x + k0; };
    const double h = t_end / steps;
    std::vector<OdeSample> out{{0.0, x0}};
    double x = x0;
    for (int i = 1; i <= steps; ++i) {
        const double a = rhs(x);
        const double b = rhs(x + 0.5 * h * a);
        const double c = rhs(x + 0.5 * h * b);
        const double d = rhs(x + h * c);
        x += h / 6.0 * (a + 2.0 * b + 2.0 * c + d);
        out.push_back({i * h, x});
    }
    return out;
}

AuditReport riccati_audit(const Trajectory& run, const RiccatiOptions& options) {
    require_run(run);
    const double nu = run.options.dynamics.nu;
    const auto t = run.times();
    const auto x = run.column(&Sample::x_small);
    const auto g = run.column(&Sample::g_forcing);
    const std::size_t n = t.size();
    const double k0 = *std::max_element(g.begin(), g.end());

    double c0_measured = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (!(x[i] > options.threshold)) continue;
        const double dxdt = (x[i + 1] - x[i - 1]) / (t[i + 1] - t[i - 1]);
        c0_measured = std::max(c0_measured, (dxdt + nu * x[i] - g[i]) / (x[i] * x[i]));
    }
    const double c0 = std::max(c0_measured, options.c0_floor);
    const double x0 = x.front();
    const double xt = x.back();
    const double t_end = t.back();
    const double x_max = *std::max_element(x.begin(), x.end());

    AuditReport r;
    r.id = "small-data-comparison";
    describe(r, run);
    r.metadata["c0_measured"] = std::isfinite(c0_measured) ? num(c0_measured) : "none";
    r.metadata["c0"] = num(c0);
    r.metadata["k0"] = num(k0);
    r.metadata["x0"] = num(x0);
    r.metadata["xT"] = num(xt);
    r.lhs_terms = {{"sup X_small", x_max}};

    const std::optional<double> beta = riccati_bound(x0, c0, k0, t_end);
    if (!beta) {
        r.lhs = x_max;
        r.rhs = std::numeric_limits<double>::infinity();
        r.ratio = 0.0;
        r.verdict = Verdict::inapplicable;
        r.metadata["premise"] = "bound-breakdown";
        return r;
    }
    r.rhs_terms = {{"beta(T)", *beta}};
    r.total();
    r.explicit_constant = c0;
    bool ok = x_max <= *beta * (1.0 + options.tolerance) + 1e-300;

    const double nu_star = nu - c0 * *beta;
    r.metadata["nu_star"] = num(nu_star);
    if (nu_star > 0.0) {
        const double decay = integral(t, g) + std::exp(-nu_star * t_end) * x0;
        r.metadata["decay_bound"] = num(decay);
        ok = ok && xt <= decay * (1.0 + options.tolerance) + 1e-300;
        if (decay <= x0) {
            r.metadata["premise"] = "small-data";
            ok = ok && xt <= x0 * (1.0 + options.tolerance) + 1e-300;
        } else {
            r.metadata["premise"] = "forcing-dominated";
        }
    } else {
        r.metadata["premise"] = "no-decay-margin";
    }
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    return r;
}

std::vector<AuditReport> trajectory_audits(const Trajectory& run, const ExponentChoice& e) {
    const DConstants d = compute_d_constants(run, e.eps0);
    std::vector<AuditReport> out;
    out.push_back(energy_audit(run, d));
    out.push_back(swirl_audit(run, d));
    out.push_back(l4_audit(run, d));
    out.push_back(phi_gamma_audit(run, d));
    out.push_back(i3_bound_audit(run, e));
    out.push_back(x_closure_audit(run, d, e));
    for (AuditReport& r : swirl_derivative_audit(run, d)) out.push_back(std::move(r));
    out.push_back(omega_rz_audit(run, d));
    out.push_back(riccati_audit(run));
    if (!run.last.phi_gamma.gamma.empty()) {
        for (AuditReport r : hardy_check(run.last.phi_gamma.gamma, e.eps2)) {
            describe(r, run);
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace axicyl
