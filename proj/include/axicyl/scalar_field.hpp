/// @file scalar_field.hpp
/// @brief One real axisymmetric quantity sampled on a Grid, tagged with its
/// parity about the axis and its condition at r = R.
#pragma once

#include <functional>
#include <span>
#include <vector>

#include "axicyl/grid.hpp"

namespace axicyl {

enum class Parity { even, odd };
/// Condition at r = R. `free` means no condition: ghosts are extrapolated.
enum class OuterBc { dirichlet, neumann, free };

Parity flip(Parity p);
Parity product_parity(Parity a, Parity b);
const char* to_string(Parity p);
const char* to_string(OuterBc bc);

class ScalarField {
public:
    ScalarField() = default;
    ScalarField(GridPtr grid, Parity parity, OuterBc bc);

    /// Samples fn(r, z) at every node.
    static ScalarField sample(GridPtr grid, Parity parity, OuterBc bc,
                              const std::function<double(double, double)>& fn);
    static ScalarField constant(GridPtr grid, double value, Parity parity = Parity::even,
                                OuterBc bc = OuterBc::free);

    bool empty() const { return !grid_; }
    const Grid& grid() const { return *grid_; }
    const GridPtr& grid_ptr() const { return grid_; }
    Parity parity() const { return parity_; }
    OuterBc bc() const { return bc_; }

    double& operator()(int j, int k) { return values_[grid_->index(j, k)]; }
    double operator()(int j, int k) const { return values_[grid_->index(j, k)]; }
    double& operator[](std::size_t i) { return values_[i]; }
    double operator[](std::size_t i) const { return values_[i]; }
    std::span<double> values() { return values_; }
    std::span<const double> values() const { return values_; }
    std::size_t size() const { return values_.size(); }

    /// Same samples under different tags.
    ScalarField retagged(Parity parity, OuterBc bc) const;
    ScalarField zeros_like() const;

    ScalarField& operator+=(const ScalarField& other);
    ScalarField& operator-=(const ScalarField& other);
    ScalarField& operator*=(double s);
    /// this += s * other
    ScalarField& axpy(double s, const ScalarField& other);

    double max_abs() const;
    bool all_finite() const;

private:
    GridPtr grid_;
    Parity parity_ = Parity::even;
    OuterBc bc_ = OuterBc::free;
    std::vector<double> values_;
};

ScalarField operator+(ScalarField a, const ScalarField& b);
ScalarField operator-(ScalarField a, const ScalarField& b);
ScalarField operator*(ScalarField a, double s);
ScalarField operator*(double s, ScalarField a);
/// Pointwise product; parities multiply, Dirichlet wins over anything else.
ScalarField operator*(const ScalarField& a, const ScalarField& b);

/// Multiplies by r^power. Odd integer powers flip the parity.
ScalarField scale_by_r(const ScalarField& f, int power);
/// Applies fn to every sample; tags unchanged.
ScalarField map(const ScalarField& f, const std::function<double(double)>& fn);

/// Throws Error(grid_mismatch) unless both fields live on grids of equal shape.
void require_same_grid(const ScalarField& a, const ScalarField& b);

}  // namespace axicyl
