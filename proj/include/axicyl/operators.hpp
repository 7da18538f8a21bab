/// @file operators.hpp
/// @brief Axis-regular discrete differential operators and quadrature on a Grid.
///
/// Radial ghosts: two rows below the axis come from the parity tag
/// (f_{-1} = +-f_0, f_{-2} = +-f_1); two rows beyond r = R come from the
/// outer tag (Dirichlet: cubic through the zero at R, Neumann: mirror,
/// free: cubic extrapolation).
#pragma once

#include <string>
#include <vector>

#include "axicyl/scalar_field.hpp"

namespace axicyl {

/// Radial derivative; flips parity. Neumann input gives a Dirichlet output.
ScalarField d_r(const ScalarField& f);
ScalarField d_rr(const ScalarField& f);
/// Third radial derivative: centred 5-point stencil in the interior,
/// one-sided 5-point stencils on the last two rows.
ScalarField d_rrr(const ScalarField& f);
/// z-derivatives follow Grid::z_scheme() (FFT or periodic centred differences).
ScalarField d_z(const ScalarField& f);
ScalarField d_zz(const ScalarField& f);

/// (1/r)(r f_r)_r + f_zz in flux form; r_{-1/2} = 0 so no axis value is used.
ScalarField laplace_cyl(const ScalarField& f);
/// laplace_cyl(f) + (2/r) d_r(f)
ScalarField laplace_mod(const ScalarField& f);
/// laplace_cyl(f) - (2/r) d_r(f), the operator acting on the swirl r v_phi.
ScalarField swirl_laplace(const ScalarField& f);

/// Midpoint rule for the integral of f r dr dz over (0,R) x (-a,a).
double integrate(const ScalarField& f);
/// Integral of f(R, z) dz.
double boundary_integral_S1(const ScalarField& f);

/// Per-z values at r = R (exactly 0 for Dirichlet-tagged fields).
std::vector<double> trace_at_R(const ScalarField& f);
/// Per-z values at r = 0 by quadratic extrapolation from the first three cells.
std::vector<double> trace_at_axis(const ScalarField& f);

enum class Advection { centered, upwind };

const char* to_string(Advection scheme);
Advection parse_advection(const std::string& name);

/// v_r f_r + v_z f_z. The upwind variant is first order and monotone.
ScalarField advect(const ScalarField& v_r, const ScalarField& v_z, const ScalarField& f,
                   Advection scheme = Advection::centered);

/// sqrt(f_r^2 + f_z^2), the meridian gradient magnitude.
ScalarField gradient_magnitude(const ScalarField& f);

}  // namespace axicyl
