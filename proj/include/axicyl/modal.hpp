/// @file modal.hpp
/// @brief Analytic test fields: sums of radial polynomials times z-harmonics,
/// with exact derivatives, plus the seeded generator used for every random family.
#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "axicyl/scalar_field.hpp"

namespace axicyl {

/// Deterministic uniform generator. Doubles are built from the top 53 bits
/// of mt19937_64 so streams are identical across standard libraries.
class SeededRng {
public:
    explicit SeededRng(std::uint64_t seed) : engine_(seed) {}
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

private:
    std::mt19937_64 engine_;
};

/// Polynomial in r, coefficient i multiplies r^i.
class Polynomial {
public:
    Polynomial() = default;
    explicit Polynomial(std::vector<double> coefficients) : c_(std::move(coefficients)) {}

    double operator()(double r) const;
    Polynomial derivative() const;
    /// Exact division by r^power; throws unless the low coefficients vanish.
    Polynomial divided_by_r(int power) const;
    Polynomial operator*(const Polynomial& other) const;
    Polynomial operator+(const Polynomial& other) const;
    Polynomial operator*(double s) const;
    const std::vector<double>& coefficients() const { return c_; }

private:
    std::vector<double> c_;
};

/// P(r) (c cos(k z) + s sin(k z)) with k = pi * mode / a.
struct ModalTerm {
    Polynomial radial;
    int mode = 0;
    double cos_coef = 1.0;
    double sin_coef = 0.0;
};

class ModalField {
public:
    ModalField() = default;
    ModalField(double half_height, std::vector<ModalTerm> terms) : a_(half_height), terms_(std::move(terms)) {}

    double operator()(double r, double z) const;
    ModalField d_r() const;
    ModalField d_z() const;
    /// -(f_rr + (1 + drift)/r f_r + f_zz), the operator of the stream-ratio problem for drift = 2.
    ModalField negative_operator(double drift) const;
    ModalField scaled(double s) const;

    ScalarField sample(GridPtr grid, Parity parity, OuterBc bc) const;
    const std::vector<ModalTerm>& terms() const { return terms_; }
    double half_height() const { return a_; }

private:
    double a_ = 1.0;
    std::vector<ModalTerm> terms_;
};

/// A right-hand side with, when known, its exact stream ratio.
struct EllipticSample {
    ModalField vorticity;
    ModalField stream;  ///< empty terms when no closed form is available
    bool has_exact_stream = false;
};

/// Random vorticity: at most five z-modes times (R^2 - r^2)(p0 + p1 r^2).
std::vector<EllipticSample> random_vorticity_family(double radius, double half_height, std::uint64_t seed,
                                                    int count = 20);
/// Stream ratios r^2 (R^2 - r^2)(p0 + p1 r^2) per mode, vanishing on the axis;
/// vorticity is produced analytically.
std::vector<EllipticSample> axis_vanishing_family(double radius, double half_height, std::uint64_t seed,
                                                  int count = 20);

/// Default seed of the seeded families.
inline constexpr std::uint64_t family_seed = 20240611;

}  // namespace axicyl
