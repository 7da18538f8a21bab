#include "axicyl/operators.hpp"

#include <array>
#include <cmath>
#include <complex>

#include "axicyl/error.hpp"
#include "axicyl/spectral.hpp"
#include "axicyl/stencils.hpp"

namespace axicyl {

namespace {

void require_tagged(const ScalarField& f) {
    if (f.empty()) throw Error(ErrorKind::missing_boundary_tag, "operator applied to an untagged field");
}

/// Radial line accessor with two ghost rows on each side.
class RadialLine {
public:
    RadialLine(const ScalarField& f, int k) : f_(f), k_(k), n_(f.grid().nr()) {
        const double s = f.parity() == Parity::even ? 1.0 : -1.0;
        lo_[0] = s * f(0, k);
        lo_[1] = s * f(1, k);
        const auto at = [&](int j) { return f(j, k); };
        switch (f.bc()) {
        case OuterBc::dirichlet:
            hi_[0] = -3.0 * at(n_ - 1) + at(n_ - 2) - 0.2 * at(n_ - 3);
            hi_[1] = dirichlet_second_[0] * at(n_ - 1) + dirichlet_second_[1] * at(n_ - 2) +
                     dirichlet_second_[2] * at(n_ - 3);
            break;
        case OuterBc::neumann:
            hi_[0] = at(n_ - 1);
            hi_[1] = at(n_ - 2);
            break;
        case OuterBc::free:
            hi_[0] = 4.0 * at(n_ - 1) - 6.0 * at(n_ - 2) + 4.0 * at(n_ - 3) - at(n_ - 4);
            hi_[1] = 4.0 * hi_[0] - 6.0 * at(n_ - 1) + 4.0 * at(n_ - 2) - at(n_ - 3);
            break;
        }
    }

    double operator()(int j) const {
        if (j < 0) return lo_[static_cast<std::size_t>(-j - 1)];
        if (j >= n_) return hi_[static_cast<std::size_t>(j - n_)];
        return f_(j, k_);
    }

private:
    /// Cubic through 0 at R and the last three cells, evaluated 1.5 cells past R.
    static inline const std::array<double, 3> dirichlet_second_ = [] {
        const double nodes[4] = {0.0, -0.5, -1.5, -2.5};
        const auto w = fornberg_weights(1.5, nodes, 0);
        return std::array<double, 3>{w[0][1], w[0][2], w[0][3]};
    }();

    const ScalarField& f_;
    int k_;
    int n_;
    std::array<double, 2> lo_{};
    std::array<double, 2> hi_{};
};

OuterBc after_first_radial(OuterBc bc) { return bc == OuterBc::neumann ? OuterBc::dirichlet : OuterBc::free; }

template <class Fn>
ScalarField radial_map(const ScalarField& f, Parity parity, OuterBc bc, Fn&& row_value) {
    require_tagged(f);
    const Grid& g = f.grid();
    ScalarField out(f.grid_ptr(), parity, bc);
    for (int k = 0; k < g.nz(); ++k) {
        const RadialLine line(f, k);
        for (int j = 0; j < g.nr(); ++j) out(j, k) = row_value(line, j);
    }
    return out;
}

/// Multiplies mode m of every row by mult(m) in Fourier space.
template <class Mult>
ScalarField spectral_z(const ScalarField& f, Mult&& mult) {
    const Grid& g = f.grid();
    const ZFourier& fft = ZFourier::for_grid(g);
    const int modes = fft.modes();
    std::vector<std::complex<double>> hat(static_cast<std::size_t>(g.nr()) * modes);
    fft.forward(f.values(), hat);
    for (int j = 0; j < g.nr(); ++j) {
        for (int m = 0; m < modes; ++m) hat[static_cast<std::size_t>(j) * modes + m] *= mult(m);
    }
    ScalarField out = f.zeros_like();
    fft.inverse(hat, out.values());
    return out;
}

}  // namespace

ScalarField d_r(const ScalarField& f) {
    require_tagged(f);
    const double inv = 1.0 / (2.0 * f.grid().dr());
    return radial_map(f, flip(f.parity()), after_first_radial(f.bc()),
                      [inv](const RadialLine& l, int j) { return (l(j + 1) - l(j - 1)) * inv; });
}

ScalarField d_rr(const ScalarField& f) {
    require_tagged(f);
    const double h = f.grid().dr();
    const double inv = 1.0 / (h * h);
    return radial_map(f, f.parity(), OuterBc::free,
                      [inv](const RadialLine& l, int j) { return (l(j + 1) - 2.0 * l(j) + l(j - 1)) * inv; });
}

ScalarField d_rrr(const ScalarField& f) {
    require_tagged(f);
    const Grid& g = f.grid();
    const int n = g.nr();
    const double h = g.dr();
    const double inv = 1.0 / (2.0 * h * h * h);
    // One-sided weights on the last five cells for rows n-2 and n-1.
    const double nodes[5] = {-4.0, -3.0, -2.0, -1.0, 0.0};
    const auto w_last = fornberg_weights(0.0, nodes, 3)[3];
    const auto w_prev = fornberg_weights(-1.0, nodes, 3)[3];
    const double scale = 1.0 / (h * h * h);
    return radial_map(f, flip(f.parity()), OuterBc::free, [&](const RadialLine& l, int j) {
        if (j < n - 2) return (l(j + 2) - 2.0 * l(j + 1) + 2.0 * l(j - 1) - l(j - 2)) * inv;
        const auto& w = (j == n - 1) ? w_last : w_prev;
        double s = 0.0;
        for (int i = 0; i < 5; ++i) s += w[static_cast<std::size_t>(i)] * l(n - 5 + i);
        return s * scale;
    });
}

ScalarField d_z(const ScalarField& f) {
    require_tagged(f);
    const Grid& g = f.grid();
    if (g.z_scheme() == ZScheme::spectral) {
        const int nyquist = g.nz() / 2;
        return spectral_z(f, [&](int m) {
            return m == nyquist ? std::complex<double>(0.0) : std::complex<double>(0.0, g.wavenumber(m));
        });
    }
    ScalarField out = f.zeros_like();
    const int nz = g.nz();
    const double inv = 1.0 / (2.0 * g.dz());
    for (int j = 0; j < g.nr(); ++j) {
        for (int k = 0; k < nz; ++k) out(j, k) = (f(j, (k + 1) % nz) - f(j, (k + nz - 1) % nz)) * inv;
    }
    return out;
}

ScalarField d_zz(const ScalarField& f) {
    require_tagged(f);
    const Grid& g = f.grid();
    if (g.z_scheme() == ZScheme::spectral) {
        return spectral_z(f, [&](int m) { return std::complex<double>(-g.zz_symbol(m)); });
    }
    ScalarField out = f.zeros_like();
    const int nz = g.nz();
    const double inv = 1.0 / (g.dz() * g.dz());
    for (int j = 0; j < g.nr(); ++j) {
        for (int k = 0; k < nz; ++k) {
            out(j, k) = (f(j, (k + 1) % nz) - 2.0 * f(j, k) + f(j, (k + nz - 1) % nz)) * inv;
        }
    }
    return out;
}

ScalarField laplace_cyl(const ScalarField& f) {
    require_tagged(f);
    const Grid& g = f.grid();
    const double h2 = g.dr() * g.dr();
    ScalarField radial = radial_map(f, f.parity(), OuterBc::free, [&](const RadialLine& l, int j) {
        const double flux_out = g.r_face(j + 1) * (l(j + 1) - l(j));
        const double flux_in = g.r_face(j) * (l(j) - l(j - 1));
        return (flux_out - flux_in) / (g.r(j) * h2);
    });
    radial += d_zz(f).retagged(f.parity(), OuterBc::free);
    return radial;
}

namespace {

ScalarField laplace_with_drift(const ScalarField& f, double drift) {
    ScalarField out = laplace_cyl(f);
    const ScalarField dr = d_r(f);
    const Grid& g = f.grid();
    for (int j = 0; j < g.nr(); ++j) {
        const double c = drift / g.r(j);
        for (int k = 0; k < g.nz(); ++k) out(j, k) += c * dr(j, k);
    }
    return out;
}

}  // namespace

ScalarField laplace_mod(const ScalarField& f) { return laplace_with_drift(f, 2.0); }

ScalarField swirl_laplace(const ScalarField& f) { return laplace_with_drift(f, -2.0); }

double integrate(const ScalarField& f) {
    require_tagged(f);
    const Grid& g = f.grid();
    double total = 0.0;
    for (int j = 0; j < g.nr(); ++j) {
        double row = 0.0;
        for (int k = 0; k < g.nz(); ++k) row += f(j, k);
        total += g.weight(j) * row;
    }
    return total;
}

std::vector<double> trace_at_R(const ScalarField& f) {
    require_tagged(f);
    const Grid& g = f.grid();
    std::vector<double> out(static_cast<std::size_t>(g.nz()), 0.0);
    if (f.bc() == OuterBc::dirichlet) return out;
    const int n = g.nr();
    for (int k = 0; k < g.nz(); ++k) {
        out[static_cast<std::size_t>(k)] = kEdgeExtrapolation[0] * f(n - 1, k) + kEdgeExtrapolation[1] * f(n - 2, k) +
                                           kEdgeExtrapolation[2] * f(n - 3, k);
    }
    return out;
}

std::vector<double> trace_at_axis(const ScalarField& f) {
    require_tagged(f);
    const Grid& g = f.grid();
    std::vector<double> out(static_cast<std::size_t>(g.nz()));
    for (int k = 0; k < g.nz(); ++k) {
        out[static_cast<std::size_t>(k)] =
            kEdgeExtrapolation[0] * f(0, k) + kEdgeExtrapolation[1] * f(1, k) + kEdgeExtrapolation[2] * f(2, k);
    }
    return out;
}

double boundary_integral_S1(const ScalarField& f) {
    double s = 0.0;
    for (double v : trace_at_R(f)) s += v;
    return s * f.grid().dz();
}

const char* to_string(Advection scheme) { return scheme == Advection::centered ? "centered" : "upwind"; }

Advection parse_advection(const std::string& name) {
    if (name == "centered" || name == "centred") return Advection::centered;
    if (name == "upwind") return Advection::upwind;
    throw Error(ErrorKind::config_error, "unknown advection scheme '" + name + "'");
}

ScalarField advect(const ScalarField& v_r, const ScalarField& v_z, const ScalarField& f, Advection scheme) {
    require_same_grid(v_r, f);
    require_same_grid(v_z, f);
    const Parity parity = product_parity(v_r.parity(), flip(f.parity()));
    if (scheme == Advection::centered) {
        ScalarField out = v_r * d_r(f);
        ScalarField axial = v_z * d_z(f);
        out.axpy(1.0, axial.retagged(out.parity(), axial.bc()));
        return out.retagged(parity, OuterBc::free);
    }
    const Grid& g = f.grid();
    const int n = g.nr();
    const int nz = g.nz();
    const double ir = 1.0 / g.dr();
    const double iz = 1.0 / g.dz();
    ScalarField out(f.grid_ptr(), parity, OuterBc::free);
    for (int k = 0; k < nz; ++k) {
        const RadialLine line(f, k);
        for (int j = 0; j < n; ++j) {
            const double vr = v_r(j, k);
            double fr;
            if (vr > 0.0) {
                fr = (line(j) - line(j - 1)) * ir;
            } else if (j == n - 1) {
                // Inflow through r = R: the wall value (0 for Dirichlet, else the cell value).
                fr = f.bc() == OuterBc::dirichlet ? -2.0 * f(j, k) * ir : 0.0;
            } else {
                fr = (line(j + 1) - line(j)) * ir;
            }
            const double vz = v_z(j, k);
            const double fz = vz > 0.0 ? (f(j, k) - f(j, (k + nz - 1) % nz)) * iz
                                       : (f(j, (k + 1) % nz) - f(j, k)) * iz;
            out(j, k) = vr * fr + vz * fz;
        }
    }
    return out;
}

ScalarField gradient_magnitude(const ScalarField& f) {
    const ScalarField fr = d_r(f);
    const ScalarField fz = d_z(f);
    ScalarField out(f.grid_ptr(), Parity::even, OuterBc::free);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::hypot(fr[i], fz[i]);
    return out;
}

}  // namespace axicyl
