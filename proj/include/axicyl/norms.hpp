/// @file norms.hpp
/// @brief Lebesgue, mixed space-time, energy-space and weighted Sobolev norms.
/// All spatial integrals use the measure r dr dz.
#pragma once

#include <limits>
#include <vector>

#include "axicyl/scalar_field.hpp"

namespace axicyl {

inline constexpr double infinity_exponent = std::numeric_limits<double>::infinity();

/// (integral |f|^p r dr dz)^(1/p); p = infinity reads the node maximum.
double lp_norm(const ScalarField& f, double p);

/// (integral |f|^2 r^(2 s) r dr dz)^(1/2)
double weighted_l2(const ScalarField& f, double s);

/// Unweighted H^1 norm (|f|_2^2 + |f_r|_2^2 + |f_z|_2^2)^(1/2).
double h1_norm(const ScalarField& f);

/// H^k_mu norm: sum over multi-indices |alpha| <= k of
/// integral |D^alpha f|^2 r^(2(mu + |alpha| - k)) r dr dz, square-rooted.
double weighted_hk_norm(const ScalarField& f, int k, double mu);

/// A scalar sampled on a time mesh together with its reduction in time.
struct TimeSeriesNorm {
    enum class Reduction { sup, l2, l1 };

    std::vector<double> times;
    std::vector<double> values;
    Reduction reduction = Reduction::sup;

    /// Validates the mesh (strictly increasing times, non-negative values).
    void validate() const;
    double reduce() const;
    /// Running reduction at every sample.
    std::vector<double> running() const;
};

/// L_q-in-time norm of sampled non-negative values by the trapezoid rule;
/// q = infinity gives the maximum.
double time_norm(const std::vector<double>& times, const std::vector<double>& values, double q);

/// Cumulative trapezoid integral of values, one entry per sample.
std::vector<double> cumulative_trapezoid(const std::vector<double>& times, const std::vector<double>& values);

/// L_q in time of the L_p spatial norms of a field series.
double mixed_norm(const std::vector<double>& times, const std::vector<ScalarField>& series, double p, double q);

/// sup_t |u|_2 + (integral |grad u|_2^2 dt)^(1/2) from sampled spatial norms.
double v_norm(const std::vector<double>& times, const std::vector<double>& l2_values,
              const std::vector<double>& grad_l2_values);
/// Same norm from a field series; gradients use the grid operators.
double v_norm(const std::vector<double>& times, const std::vector<ScalarField>& series);

}  // namespace axicyl
