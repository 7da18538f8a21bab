/// @file spectral.hpp
/// @brief Batched real FFTs along z for every radial row of a Grid.
#pragma once

#include <complex>
#include <span>
#include <vector>

namespace axicyl {

class Grid;

/// Row-batched r2c/c2r transforms of length Nz. Plans are created once per
/// (Nr, Nz) and shared; execution is thread-safe.
class ZFourier {
public:
    static const ZFourier& for_grid(const Grid& grid);

    int rows() const { return rows_; }
    int length() const { return n_; }
    int modes() const { return n_ / 2 + 1; }

    /// in: rows*Nz reals; out: rows*modes coefficients (unnormalised).
    void forward(std::span<const double> in, std::span<std::complex<double>> out) const;
    /// Consumes `in` (FFTW destroys c2r input); output is scaled by 1/Nz so
    /// inverse(forward(x)) == x.
    void inverse(std::span<std::complex<double>> in, std::span<double> out) const;

    ZFourier(int rows, int n);
    ~ZFourier();
    ZFourier(const ZFourier&) = delete;
    ZFourier& operator=(const ZFourier&) = delete;

private:
    int rows_;
    int n_;
    void* forward_plan_;
    void* inverse_plan_;
};

}  // namespace axicyl
