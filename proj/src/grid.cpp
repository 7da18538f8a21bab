#include "axicyl/grid.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "axicyl/error.hpp"

namespace axicyl {

const char* to_string(ZScheme scheme) {
    return scheme == ZScheme::spectral ? "spectral" : "fd";
}

ZScheme parse_z_scheme(const std::string& name) {
    if (name == "spectral") return ZScheme::spectral;
    if (name == "fd" || name == "finite_difference") return ZScheme::finite_difference;
    throw Error(ErrorKind::invalid_argument, "unknown z scheme '" + name + "'");
}

Grid::Grid(double radius, double half_height, int nr, int nz, ZScheme z_scheme)
    : radius_(radius), half_height_(half_height), nr_(nr), nz_(nz),
      dr_(radius / nr), dz_(2.0 * half_height / nz), z_scheme_(z_scheme) {
    if (!(radius > 0.0) || !(half_height > 0.0)) {
        throw Error(ErrorKind::invalid_argument, "R and a must be positive");
    }
    if (nr < min_cells || nz < min_cells || nz % 2 != 0) {
        std::ostringstream os;
        os << "need Nr >= " << min_cells << ", Nz >= " << min_cells << " and Nz even (got Nr=" << nr
           << ", Nz=" << nz << ")";
        throw Error(ErrorKind::invalid_dimension, os.str());
    }
    r_.resize(static_cast<std::size_t>(nr));
    for (int j = 0; j < nr; ++j) r_[static_cast<std::size_t>(j)] = (j + 0.5) * dr_;
    z_.resize(static_cast<std::size_t>(nz));
    for (int k = 0; k < nz; ++k) z_[static_cast<std::size_t>(k)] = -half_height + k * dz_;
}

double Grid::wavenumber(int m) const {
    return std::numbers::pi * m / half_height_;
}

double Grid::zz_symbol(int m) const {
    if (z_scheme_ == ZScheme::spectral) {
        const double k = wavenumber(m);
        return k * k;
    }
    const double s = std::sin(std::numbers::pi * m / nz_);
    return 4.0 * s * s / (dz_ * dz_);
}

std::string Grid::descriptor() const {
    std::ostringstream os;
    os.precision(17);
    os << "R=" << radius_ << ";a=" << half_height_ << ";Nr=" << nr_ << ";Nz=" << nz_
       << ";z=" << to_string(z_scheme_);
    return os.str();
}

bool Grid::same_shape(const Grid& other) const {
    return nr_ == other.nr_ && nz_ == other.nz_ && radius_ == other.radius_ &&
           half_height_ == other.half_height_ && z_scheme_ == other.z_scheme_;
}

GridPtr make_grid(double radius, double half_height, int nr, int nz, ZScheme z_scheme) {
    return std::make_shared<const Grid>(radius, half_height, nr, nz, z_scheme);
}

}  // namespace axicyl
