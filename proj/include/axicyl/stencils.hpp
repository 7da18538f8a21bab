/// @file stencils.hpp
/// @brief Finite-difference weights on arbitrary 1D node sets (Fornberg's
/// recursion) and the fixed extrapolation rules used at r = 0 and r = R.
#pragma once

#include <span>
#include <vector>

namespace axicyl {

/// weights[m][i] is the weight of f(nodes[i]) in the m-th derivative at x0,
/// for m = 0..max_order.
std::vector<std::vector<double>> fornberg_weights(double x0, std::span<const double> nodes, int max_order);

/// Quadratic extrapolation from the first three cell centres to r = 0
/// (and, mirrored, from the last three to r = R): (15/8, -5/4, 3/8).
inline constexpr double kEdgeExtrapolation[3] = {1.875, -1.25, 0.375};

}  // namespace axicyl
