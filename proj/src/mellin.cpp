#include "axicyl/mellin.hpp"

#include <fftw3.h>

#include <algorithm>
#include <array>
#include <boost/math/quadrature/gauss.hpp>
#include <cmath>
#include <mutex>
#include <numbers>

#include "axicyl/error.hpp"

namespace axicyl {

namespace {

constexpr complex i_unit{0.0, 1.0};
constexpr double pole_guard = 1e-14;

complex resolvent_denominator(complex lambda) { return lambda * lambda + 2.0 * i_unit * lambda + 3.0; }

}  // namespace

std::pair<complex, complex> resolvent_poles() {
    // lambda = -i +- sqrt(-1 - 3) = -i +- 2i
    const complex b = 2.0 * i_unit;
    const complex disc = std::sqrt(b * b - 12.0);
    complex a = (-b - disc) / 2.0;
    complex c = (-b + disc) / 2.0;
    if (a.imag() > c.imag()) std::swap(a, c);
    return {a, c};
}

complex resolvent(complex lambda) {
    const complex d = resolvent_denominator(lambda);
    if (std::abs(d) < pole_guard) throw Error(ErrorKind::pole_evaluation, "resolvent evaluated at a pole");
    return 1.0 / d;
}

double resolvent_multiplier(complex lambda) {
    const double m2 = std::norm(lambda);
    return (m2 * m2 + m2 + 1.0) * std::norm(resolvent(lambda));
}

ResolventLine make_resolvent_line(double mu, const std::vector<double>& xi) {
    ResolventLine line;
    line.mu = mu;
    line.h = 1.0 - mu;
    if (line.h == 1.0 || line.h == -3.0) {
        throw Error(ErrorKind::pole_evaluation, "line Im lambda = h passes through a resolvent pole");
    }
    line.samples.reserve(xi.size());
    for (double x : xi) line.samples.emplace_back(x, line.h);
    return line;
}

LineSupremum multiplier_supremum(double mu, int samples, double xi_max) {
    if (samples < 3) throw Error(ErrorKind::invalid_argument, "need at least three samples");
    LineSupremum s;
    s.mu = mu;
    s.h = 1.0 - mu;
    s.min_denominator = std::numeric_limits<double>::infinity();
    for (int i = 0; i < samples; ++i) {
        const double xi = -xi_max + 2.0 * xi_max * i / (samples - 1);
        const complex lambda{xi, s.h};
        const double d = std::abs(resolvent_denominator(lambda));
        s.min_denominator = std::min(s.min_denominator, d);
        const double m = resolvent_multiplier(lambda);
        if (m > s.sup) {
            s.sup = m;
            s.argsup = xi;
        }
    }
    s.far_field = resolvent_multiplier({xi_max, s.h});
    return s;
}

std::vector<double> TauMesh::frequencies() const {
    std::vector<double> xi(static_cast<std::size_t>(n));
    const double base = 2.0 * std::numbers::pi / (n * step);
    for (int m = 0; m < n; ++m) xi[static_cast<std::size_t>(m)] = base * (m <= n / 2 ? m : m - n);
    return xi;
}

TauMesh make_tau_mesh(double radius, double cut, int n) {
    if (!(radius > 0.0) || !(cut > 0.0 && cut < 1.0) || n < 16) {
        throw Error(ErrorKind::invalid_argument, "tau mesh needs R > 0, cut in (0,1) and at least 16 points");
    }
    TauMesh m;
    m.tau_min = -std::log(radius);
    m.tau_max = -std::log(radius * cut);
    m.n = n;
    m.step = (m.tau_max - m.tau_min) / (n - 1);
    return m;
}

namespace {

std::mutex& plan_mutex() {
    static std::mutex m;
    return m;
}

std::vector<complex> dft(const std::vector<complex>& in, int sign) {
    const int n = static_cast<int>(in.size());
    std::vector<complex> out(in.size());
    auto* src = reinterpret_cast<fftw_complex*>(const_cast<complex*>(in.data()));
    auto* dst = reinterpret_cast<fftw_complex*>(out.data());
    fftw_plan plan;
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        plan = fftw_plan_dft_1d(n, src, dst, sign, FFTW_ESTIMATE | FFTW_UNALIGNED | FFTW_PRESERVE_INPUT);
    }
    if (!plan) throw Error(ErrorKind::numerical_failure, "FFTW planning failed");
    fftw_execute(plan);
    {
        std::lock_guard<std::mutex> lock(plan_mutex());
        fftw_destroy_plan(plan);
    }
    return out;
}

}  // namespace

std::vector<complex> fourier_forward(const std::vector<complex>& f, const TauMesh& mesh) {
    if (static_cast<int>(f.size()) != mesh.n) throw Error(ErrorKind::mismatched_mesh, "samples do not match mesh");
    std::vector<complex> out = dft(f, FFTW_FORWARD);
    const double scale = mesh.step / std::sqrt(2.0 * std::numbers::pi);
    for (complex& v : out) v *= scale;
    return out;
}

std::vector<complex> fourier_inverse(const std::vector<complex>& f_hat, const TauMesh& mesh) {
    if (static_cast<int>(f_hat.size()) != mesh.n) throw Error(ErrorKind::mismatched_mesh, "samples do not match mesh");
    std::vector<complex> out = dft(f_hat, FFTW_BACKWARD);
    const double scale = std::sqrt(2.0 * std::numbers::pi) / (mesh.step * mesh.n);
    for (complex& v : out) v *= scale;
    return out;
}

RadialProfile RadialProfile::from_polynomial(const Polynomial& p) {
    const Polynomial d1 = p.derivative();
    const Polynomial d2 = d1.derivative();
    return {[p](double r) { return p(r); }, [d1](double r) { return d1(r); }, [d2](double r) { return d2(r); }};
}

namespace {

/// Smooth step S(t) = q(t) / (q(t) + q(1-t)), q(t) = exp(-1/t), with
/// derivatives, for t in [0, 1].
struct Step {
    double s;
    double ds;
    double dds;
};

Step smooth_step(double t) {
    if (t <= 0.0) return {0.0, 0.0, 0.0};
    if (t >= 1.0) return {1.0, 0.0, 0.0};
    const auto q = [](double x) {
        const double e = std::exp(-1.0 / x);
        const double d1 = e / (x * x);
        const double d2 = e * (1.0 - 2.0 * x) / (x * x * x * x);
        return std::array<double, 3>{e, d1, d2};
    };
    const auto a = q(t);
    const auto b0 = q(1.0 - t);
    const std::array<double, 3> b{b0[0], -b0[1], b0[2]};
    const double den = a[0] + b[0];
    const double den1 = a[1] + b[1];
    const double den2 = a[2] + b[2];
    const double s = a[0] / den;
    const double ds = (a[1] - s * den1) / den;
    const double dds = (a[2] - 2.0 * ds * den1 - s * den2) / den;
    return {s, ds, dds};
}

}  // namespace

RadialProfile with_cutoff(const RadialProfile& f, double radius) {
    // chi(r) = S(2 (R - r) / R)
    const double scale = -2.0 / radius;
    const auto chi = [radius, scale](double r) {
        const Step st = smooth_step(2.0 * (radius - r) / radius);
        return std::array<double, 3>{st.s, st.ds * scale, st.dds * scale * scale};
    };
    RadialProfile out;
    out.value = [f, chi](double r) { return f.value(r) * chi(r)[0]; };
    out.first = [f, chi](double r) {
        const auto c = chi(r);
        return (f.first ? f.first(r) : 0.0) * c[0] + f.value(r) * c[1];
    };
    out.second = [f, chi](double r) {
        const auto c = chi(r);
        const double f1 = f.first ? f.first(r) : 0.0;
        const double f2 = f.second ? f.second(r) : 0.0;
        return f2 * c[0] + 2.0 * f1 * c[1] + f.value(r) * c[2];
    };
    return out;
}

namespace {

void check_order(int k) {
    if (k < 0 || k > 2) throw Error(ErrorKind::unsupported_order, "weighted norm order must be 0, 1 or 2");
}

/// Profile and its tau-derivatives at tau, from r-derivatives (r = e^-tau).
struct TauValues {
    double u;
    double u1;
    double u2;
};

TauValues tau_values(const RadialProfile& f, double tau) {
    const double r = std::exp(-tau);
    const double fr = f.first ? f.first(r) : 0.0;
    const double frr = f.second ? f.second(r) : 0.0;
    return {f.value(r), -r * fr, r * r * frr + r * fr};
}

/// e^(h tau) u sampled on the mesh, with the resolvability check.
std::vector<complex> weighted_samples(const RadialProfile& f, double h, const TauMesh& mesh) {
    std::vector<complex> w(static_cast<std::size_t>(mesh.n));
    double peak = 0.0;
    for (int i = 0; i < mesh.n; ++i) {
        const double tau = mesh.node(i);
        const double v = std::exp(h * tau) * f.value(std::exp(-tau));
        w[static_cast<std::size_t>(i)] = v;
        peak = std::max(peak, std::abs(v));
    }
    const double tail = std::abs(w.back().real());
    if (!std::isfinite(peak) || tail > 1e-4 * peak) {
        throw Error(ErrorKind::unresolvable_profile, "weighted profile does not decay on the tau mesh");
    }
    return w;
}

double line_sum(const std::vector<complex>& w_hat, const TauMesh& mesh, double h, int k) {
    const auto xi = mesh.frequencies();
    const double dxi = 2.0 * std::numbers::pi / (mesh.n * mesh.step);
    double total = 0.0;
    for (std::size_t m = 0; m < w_hat.size(); ++m) {
        const double l2 = xi[m] * xi[m] + h * h;
        double weight = 0.0;
        double p = 1.0;
        for (int j = 0; j <= k; ++j) {
            weight += p;
            p *= l2;
        }
        total += weight * std::norm(w_hat[m]);
    }
    return total * dxi;
}

template <class Fn>
double dyadic_integral(Fn&& fn, double radius) {
    // 40 dyadic shells down to R 2^-40, 20-point Gauss on each.
    double total = 0.0;
    double hi = radius;
    for (int i = 0; i < 40; ++i) {
        const double lo = hi * 0.5;
        total += boost::math::quadrature::gauss<double, 20>::integrate(fn, lo, hi);
        hi = lo;
    }
    return total;
}

}  // namespace

TwoWayNorm weighted_norm_two_ways(const RadialProfile& profile, int k, double mu, double radius, const TauMesh* mesh,
                                  Cutoff cutoff) {
    check_order(k);
    const RadialProfile f = cutoff == Cutoff::smooth ? with_cutoff(profile, radius) : profile;
    const TauMesh local = mesh ? *mesh : make_tau_mesh(radius);
    TwoWayNorm out;
    out.direct = dyadic_integral(
        [&](double r) {
            const double d[3] = {f.value(r), f.first ? f.first(r) : 0.0, f.second ? f.second(r) : 0.0};
            double s = 0.0;
            for (int i = 0; i <= k; ++i) s += d[i] * d[i] * std::pow(r, 2.0 * (mu - k + i)) * r;
            return s;
        },
        radius);
    const double h = line_height(k, mu);
    const auto w_hat = fourier_forward(weighted_samples(f, h, local), local);
    out.transformed = line_sum(w_hat, local, h, k);
    return out;
}

ParsevalSides parseval_sides(const RadialProfile& profile, int k, double mu, double radius, const TauMesh* mesh,
                             Cutoff cutoff) {
    check_order(k);
    const RadialProfile f = cutoff == Cutoff::smooth ? with_cutoff(profile, radius) : profile;
    const TauMesh local = mesh ? *mesh : make_tau_mesh(radius);
    const double h = line_height(k, mu);
    ParsevalSides out;
    // Trapezoid in tau on the same mesh.
    for (int i = 0; i < local.n; ++i) {
        const double tau = local.node(i);
        const TauValues t = tau_values(f, tau);
        const double d[3] = {t.u, t.u1, t.u2};
        double s = 0.0;
        for (int j = 0; j <= k; ++j) s += d[j] * d[j];
        const double w = (i == 0 || i == local.n - 1) ? 0.5 : 1.0;
        out.tau_side += w * s * std::exp(2.0 * h * tau) * local.step;
    }
    const auto w_hat = fourier_forward(weighted_samples(f, h, local), local);
    out.line_side = line_sum(w_hat, local, h, k);
    return out;
}

AuditReport line_estimate_check(const std::function<double(double)>& g_tau, double mu, const TauMesh& mesh) {
    if (!(mu > 0.0 && mu < 1.0)) throw Error(ErrorKind::invalid_argument, "weight exponent must lie in (0,1)");
    const double h = 1.0 - mu;
    std::vector<complex> w(static_cast<std::size_t>(mesh.n));
    for (int i = 0; i < mesh.n; ++i) {
        const double tau = mesh.node(i);
        w[static_cast<std::size_t>(i)] = std::exp(h * tau) * g_tau(tau);
    }
    const auto g_hat = fourier_forward(w, mesh);
    const auto xi = mesh.frequencies();
    const double dxi = 2.0 * std::numbers::pi / (mesh.n * mesh.step);
    double lhs = 0.0;
    double rhs = 0.0;
    double sampled_sup = 0.0;
    for (std::size_t m = 0; m < g_hat.size(); ++m) {
        const complex lambda{xi[m], h};
        const double mult = resolvent_multiplier(lambda);
        sampled_sup = std::max(sampled_sup, mult);
        const double g2 = std::norm(g_hat[m]);
        lhs += mult * g2;
        rhs += g2;
    }
    const LineSupremum sup = multiplier_supremum(mu);
    AuditReport r;
    r.id = "resolvent-line-estimate";
    r.lhs_terms = {{"sum_j |lambda|^2(2-j) |v_hat|^2", lhs * dxi}};
    r.rhs_terms = {{"|g_hat|^2", rhs * dxi}};
    r.total();
    r.explicit_constant = std::max(sup.sup, sampled_sup);
    const bool ok = r.lhs <= *r.explicit_constant * r.rhs * (1.0 + 1e-12) || r.lhs == 0.0;
    r.verdict = ok ? Verdict::pass : Verdict::fail;
    r.metadata["mu"] = std::to_string(mu);
    r.metadata["h"] = std::to_string(h);
    r.metadata["multiplier_sup"] = std::to_string(*r.explicit_constant);
    r.metadata["min_denominator"] = std::to_string(sup.min_denominator);
    return r;
}

std::vector<NamedProfile> parseval_profile_family() {
    const Polynomial r2({0.0, 0.0, 1.0});
    const Polynomial one_minus_r({1.0, -1.0});
    const Polynomial one_minus_r2({1.0, 0.0, -1.0});
    const Polynomial r3({0.0, 0.0, 0.0, 1.0});
    const Polynomial one_plus_2r({1.0, 2.0});
    return {
        {"r^2(1-r)", RadialProfile::from_polynomial(r2 * one_minus_r)},
        {"r^2(1-r^2)", RadialProfile::from_polynomial(r2 * one_minus_r2)},
        {"r^3(1-r)^2", RadialProfile::from_polynomial(r3 * one_minus_r * one_minus_r)},
        {"r^2(1-r)(1+2r)", RadialProfile::from_polynomial(r2 * one_minus_r * one_plus_2r)},
    };
}

}  // namespace axicyl
