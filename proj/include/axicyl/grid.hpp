/// @file grid.hpp
/// @brief Meridian half-plane (0,R) x (-a,a), cell-centred in r, periodic in z.
#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

namespace axicyl {

/// How z-derivatives are taken. Both act on the periodic extension.
enum class ZScheme { spectral, finite_difference };

const char* to_string(ZScheme scheme);
ZScheme parse_z_scheme(const std::string& name);

/// Radial nodes r_j = (j+1/2) R/Nr (no node on the axis), axial nodes
/// z_k = -a + k 2a/Nz. Quadrature weights realise dx = r dr dz; the angular
/// factor 2*pi is dropped everywhere.
class Grid {
public:
    static constexpr int min_cells = 8;

    Grid(double radius, double half_height, int nr, int nz, ZScheme z_scheme = ZScheme::spectral);

    double radius() const { return radius_; }
    double half_height() const { return half_height_; }
    int nr() const { return nr_; }
    int nz() const { return nz_; }
    double dr() const { return dr_; }
    double dz() const { return dz_; }
    ZScheme z_scheme() const { return z_scheme_; }

    double r(int j) const { return r_[static_cast<std::size_t>(j)]; }
    double z(int k) const { return z_[static_cast<std::size_t>(k)]; }
    /// Face radius r_{j-1/2}; face 0 is the axis.
    double r_face(int j) const { return j * dr_; }
    std::span<const double> r_nodes() const { return r_; }
    std::span<const double> z_nodes() const { return z_; }

    std::size_t size() const { return static_cast<std::size_t>(nr_) * static_cast<std::size_t>(nz_); }
    std::size_t index(int j, int k) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nz_) + static_cast<std::size_t>(k);
    }
    /// Midpoint weight r_j dr dz.
    double weight(int j) const { return r_[static_cast<std::size_t>(j)] * dr_ * dz_; }

    /// Axial wavenumber of FFT mode m (0 <= m <= Nz/2).
    double wavenumber(int m) const;
    /// Symbol of -d_zz for mode m under the active z-scheme.
    double zz_symbol(int m) const;

    /// "R=..,a=..,Nr=..,Nz=..,z=.." used in reports and snapshot headers.
    std::string descriptor() const;

    bool same_shape(const Grid& other) const;

private:
    double radius_;
    double half_height_;
    int nr_;
    int nz_;
    double dr_;
    double dz_;
    ZScheme z_scheme_;
    std::vector<double> r_;
    std::vector<double> z_;
};

using GridPtr = std::shared_ptr<const Grid>;

/// Validating factory. Throws Error(invalid_dimension) for Nr or Nz below 8,
/// odd Nz, and Error(invalid_argument) for non-positive R or a.
GridPtr make_grid(double radius, double half_height, int nr, int nz, ZScheme z_scheme = ZScheme::spectral);

}  // namespace axicyl
