#include "axicyl/scalar_field.hpp"

#include <algorithm>
#include <cmath>

#include "axicyl/error.hpp"

namespace axicyl {

Parity flip(Parity p) { return p == Parity::even ? Parity::odd : Parity::even; }

Parity product_parity(Parity a, Parity b) { return a == b ? Parity::even : Parity::odd; }

const char* to_string(Parity p) { return p == Parity::even ? "even" : "odd"; }

const char* to_string(OuterBc bc) {
    switch (bc) {
    case OuterBc::dirichlet: return "dirichlet";
    case OuterBc::neumann: return "neumann";
    case OuterBc::free: return "free";
    }
    return "free";
}

ScalarField::ScalarField(GridPtr grid, Parity parity, OuterBc bc)
    : grid_(std::move(grid)), parity_(parity), bc_(bc), values_(grid_ ? grid_->size() : 0, 0.0) {}

ScalarField ScalarField::sample(GridPtr grid, Parity parity, OuterBc bc,
                                const std::function<double(double, double)>& fn) {
    ScalarField f(std::move(grid), parity, bc);
    const Grid& g = f.grid();
    for (int j = 0; j < g.nr(); ++j) {
        for (int k = 0; k < g.nz(); ++k) f(j, k) = fn(g.r(j), g.z(k));
    }
    return f;
}

ScalarField ScalarField::constant(GridPtr grid, double value, Parity parity, OuterBc bc) {
    ScalarField f(std::move(grid), parity, bc);
    std::fill(f.values_.begin(), f.values_.end(), value);
    return f;
}

ScalarField ScalarField::retagged(Parity parity, OuterBc bc) const {
    ScalarField out = *this;
    out.parity_ = parity;
    out.bc_ = bc;
    return out;
}

ScalarField ScalarField::zeros_like() const { return ScalarField(grid_, parity_, bc_); }

namespace {

OuterBc combine_additive(OuterBc a, OuterBc b) { return a == b ? a : OuterBc::free; }

void require_compatible(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    if (a.parity() != b.parity()) {
        throw Error(ErrorKind::parity_mismatch, "cannot add an even and an odd field");
    }
}

}  // namespace

ScalarField& ScalarField::operator+=(const ScalarField& other) { return axpy(1.0, other); }

ScalarField& ScalarField::operator-=(const ScalarField& other) { return axpy(-1.0, other); }

ScalarField& ScalarField::operator*=(double s) {
    for (double& v : values_) v *= s;
    return *this;
}

ScalarField& ScalarField::axpy(double s, const ScalarField& other) {
    require_compatible(*this, other);
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += s * other.values_[i];
    bc_ = combine_additive(bc_, other.bc_);
    return *this;
}

double ScalarField::max_abs() const {
    double m = 0.0;
    for (double v : values_) m = std::max(m, std::abs(v));
    return m;
}

bool ScalarField::all_finite() const {
    return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

ScalarField operator+(ScalarField a, const ScalarField& b) { return a += b; }
ScalarField operator-(ScalarField a, const ScalarField& b) { return a -= b; }
ScalarField operator*(ScalarField a, double s) { return a *= s; }
ScalarField operator*(double s, ScalarField a) { return a *= s; }

ScalarField operator*(const ScalarField& a, const ScalarField& b) {
    require_same_grid(a, b);
    const OuterBc bc = (a.bc() == OuterBc::dirichlet || b.bc() == OuterBc::dirichlet) ? OuterBc::dirichlet
                                                                                     : OuterBc::free;
    ScalarField out(a.grid_ptr(), product_parity(a.parity(), b.parity()), bc);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

ScalarField scale_by_r(const ScalarField& f, int power) {
    const Parity p = (power % 2 != 0) ? flip(f.parity()) : f.parity();
    const OuterBc bc = (f.bc() == OuterBc::dirichlet) ? OuterBc::dirichlet : OuterBc::free;
    ScalarField out = f.retagged(p, bc);
    const Grid& g = f.grid();
    for (int j = 0; j < g.nr(); ++j) {
        const double w = std::pow(g.r(j), power);
        for (int k = 0; k < g.nz(); ++k) out(j, k) *= w;
    }
    return out;
}

ScalarField map(const ScalarField& f, const std::function<double(double)>& fn) {
    ScalarField out = f;
    for (double& v : out.values()) v = fn(v);
    return out;
}

void require_same_grid(const ScalarField& a, const ScalarField& b) {
    if (a.empty() || b.empty()) throw Error(ErrorKind::grid_mismatch, "field has no grid");
    if (a.grid_ptr() != b.grid_ptr() && !a.grid().same_shape(b.grid())) {
        throw Error(ErrorKind::grid_mismatch, "fields live on different grids");
    }
}

}  // namespace axicyl
