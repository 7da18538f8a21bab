#include "axicyl/norms.hpp"

#include <algorithm>
#include <cmath>

#include "axicyl/error.hpp"
#include "axicyl/operators.hpp"

namespace axicyl {

double lp_norm(const ScalarField& f, double p) {
    if (!(p >= 1.0)) throw Error(ErrorKind::invalid_argument, "Lebesgue exponent must be >= 1");
    if (std::isinf(p)) return f.max_abs();
    const Grid& g = f.grid();
    double total = 0.0;
    for (int j = 0; j < g.nr(); ++j) {
        double row = 0.0;
        for (int k = 0; k < g.nz(); ++k) row += std::pow(std::abs(f(j, k)), p);
        total += g.weight(j) * row;
    }
    return std::pow(total, 1.0 / p);
}

namespace {

double weighted_square(const ScalarField& f, double s) {
    const Grid& g = f.grid();
    double total = 0.0;
    for (int j = 0; j < g.nr(); ++j) {
        double row = 0.0;
        for (int k = 0; k < g.nz(); ++k) row += f(j, k) * f(j, k);
        total += g.weight(j) * std::pow(g.r(j), 2.0 * s) * row;
    }
    return total;
}

}  // namespace

double weighted_l2(const ScalarField& f, double s) { return std::sqrt(weighted_square(f, s)); }

double h1_norm(const ScalarField& f) {
    return std::sqrt(weighted_square(f, 0.0) + weighted_square(d_r(f), 0.0) + weighted_square(d_z(f), 0.0));
}

double weighted_hk_norm(const ScalarField& f, int k, double mu) {
    if (k < 0 || k > 2) throw Error(ErrorKind::unsupported_order, "weighted Sobolev order must be 0, 1 or 2");
    double total = weighted_square(f, mu - k);
    if (k >= 1) {
        const ScalarField fr = d_r(f);
        const ScalarField fz = d_z(f);
        total += weighted_square(fr, mu + 1 - k) + weighted_square(fz, mu + 1 - k);
        if (k == 2) {
            total += weighted_square(d_rr(f), mu) + weighted_square(d_z(fr), mu) + weighted_square(d_zz(f), mu);
        }
    }
    return std::sqrt(total);
}

namespace {

void check_mesh(const std::vector<double>& times, std::size_t n_values) {
    if (times.size() < 2) throw Error(ErrorKind::empty_series, "time norms need at least two samples");
    if (times.size() != n_values) throw Error(ErrorKind::mismatched_mesh, "times and values differ in length");
    for (std::size_t i = 1; i < times.size(); ++i) {
        if (!(times[i] > times[i - 1])) throw Error(ErrorKind::mismatched_mesh, "times must increase strictly");
    }
}

}  // namespace

std::vector<double> cumulative_trapezoid(const std::vector<double>& times, const std::vector<double>& values) {
    if (times.size() != values.size()) throw Error(ErrorKind::mismatched_mesh, "times and values differ in length");
    std::vector<double> out(values.size(), 0.0);
    for (std::size_t i = 1; i < values.size(); ++i) {
        out[i] = out[i - 1] + 0.5 * (times[i] - times[i - 1]) * (values[i] + values[i - 1]);
    }
    return out;
}

double time_norm(const std::vector<double>& times, const std::vector<double>& values, double q) {
    check_mesh(times, values.size());
    if (!(q >= 1.0)) throw Error(ErrorKind::invalid_argument, "time exponent must be >= 1");
    if (std::isinf(q)) return *std::max_element(values.begin(), values.end());
    std::vector<double> powered(values.size());
    std::transform(values.begin(), values.end(), powered.begin(), [q](double v) { return std::pow(v, q); });
    return std::pow(cumulative_trapezoid(times, powered).back(), 1.0 / q);
}

void TimeSeriesNorm::validate() const {
    check_mesh(times, values.size());
    for (double v : values) {
        if (!(v >= 0.0)) throw Error(ErrorKind::invalid_argument, "norm samples must be non-negative");
    }
}

double TimeSeriesNorm::reduce() const {
    validate();
    switch (reduction) {
    case Reduction::sup: return time_norm(times, values, infinity_exponent);
    case Reduction::l2: return time_norm(times, values, 2.0);
    case Reduction::l1: return time_norm(times, values, 1.0);
    }
    return 0.0;
}

std::vector<double> TimeSeriesNorm::running() const {
    validate();
    std::vector<double> out(values.size());
    if (reduction == Reduction::sup) {
        double m = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) out[i] = m = std::max(m, values[i]);
        return out;
    }
    const double q = reduction == Reduction::l2 ? 2.0 : 1.0;
    std::vector<double> powered(values.size());
    std::transform(values.begin(), values.end(), powered.begin(), [q](double v) { return std::pow(v, q); });
    const auto acc = cumulative_trapezoid(times, powered);
    std::transform(acc.begin(), acc.end(), out.begin(), [q](double v) { return std::pow(v, 1.0 / q); });
    return out;
}

double mixed_norm(const std::vector<double>& times, const std::vector<ScalarField>& series, double p, double q) {
    check_mesh(times, series.size());
    std::vector<double> spatial(series.size());
    std::transform(series.begin(), series.end(), spatial.begin(), [p](const ScalarField& f) { return lp_norm(f, p); });
    return time_norm(times, spatial, q);
}

double v_norm(const std::vector<double>& times, const std::vector<double>& l2_values,
              const std::vector<double>& grad_l2_values) {
    check_mesh(times, l2_values.size());
    if (grad_l2_values.size() != l2_values.size()) {
        throw Error(ErrorKind::mismatched_mesh, "value and gradient series differ in length");
    }
    return time_norm(times, l2_values, infinity_exponent) + time_norm(times, grad_l2_values, 2.0);
}

double v_norm(const std::vector<double>& times, const std::vector<ScalarField>& series) {
    check_mesh(times, series.size());
    std::vector<double> l2(series.size());
    std::vector<double> grad(series.size());
    for (std::size_t i = 0; i < series.size(); ++i) {
        l2[i] = lp_norm(series[i], 2.0);
        grad[i] = lp_norm(gradient_magnitude(series[i]), 2.0);
    }
    return v_norm(times, l2, grad);
}

}  // namespace axicyl
