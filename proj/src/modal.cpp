#include "axicyl/modal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "axicyl/error.hpp"

namespace axicyl {

double Polynomial::operator()(double r) const {
    double v = 0.0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) v = v * r + *it;
    return v;
}

Polynomial Polynomial::derivative() const {
    if (c_.size() <= 1) return Polynomial({0.0});
    std::vector<double> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = static_cast<double>(i) * c_[i];
    return Polynomial(std::move(d));
}

Polynomial Polynomial::divided_by_r(int power) const {
    const auto p = static_cast<std::size_t>(power);
    for (std::size_t i = 0; i < std::min(p, c_.size()); ++i) {
        if (c_[i] != 0.0) throw Error(ErrorKind::invalid_argument, "polynomial is not divisible by r^power");
    }
    if (c_.size() <= p) return Polynomial({0.0});
    return Polynomial(std::vector<double>(c_.begin() + static_cast<std::ptrdiff_t>(p), c_.end()));
}

Polynomial Polynomial::operator*(const Polynomial& other) const {
    if (c_.empty() || other.c_.empty()) return Polynomial({0.0});
    std::vector<double> out(c_.size() + other.c_.size() - 1, 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) {
        for (std::size_t j = 0; j < other.c_.size(); ++j) out[i + j] += c_[i] * other.c_[j];
    }
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator+(const Polynomial& other) const {
    std::vector<double> out(std::max(c_.size(), other.c_.size()), 0.0);
    for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
    for (std::size_t i = 0; i < other.c_.size(); ++i) out[i] += other.c_[i];
    return Polynomial(std::move(out));
}

Polynomial Polynomial::operator*(double s) const {
    std::vector<double> out = c_;
    for (double& v : out) v *= s;
    return Polynomial(std::move(out));
}

double ModalField::operator()(double r, double z) const {
    double v = 0.0;
    for (const ModalTerm& t : terms_) {
        const double k = std::numbers::pi * t.mode / a_;
        v += t.radial(r) * (t.cos_coef * std::cos(k * z) + t.sin_coef * std::sin(k * z));
    }
    return v;
}

ModalField ModalField::d_r() const {
    std::vector<ModalTerm> out = terms_;
    for (ModalTerm& t : out) t.radial = t.radial.derivative();
    return ModalField(a_, std::move(out));
}

ModalField ModalField::d_z() const {
    std::vector<ModalTerm> out = terms_;
    for (ModalTerm& t : out) {
        const double k = std::numbers::pi * t.mode / a_;
        const double c = t.cos_coef;
        t.cos_coef = k * t.sin_coef;
        t.sin_coef = -k * c;
    }
    return ModalField(a_, std::move(out));
}

ModalField ModalField::negative_operator(double drift) const {
    std::vector<ModalTerm> out = terms_;
    for (ModalTerm& t : out) {
        const double k = std::numbers::pi * t.mode / a_;
        const Polynomial d1 = t.radial.derivative();
        const Polynomial lap = d1.derivative() + d1.divided_by_r(1) * (1.0 + drift) + t.radial * (-k * k);
        t.radial = lap * -1.0;
    }
    return ModalField(a_, std::move(out));
}

ModalField ModalField::scaled(double s) const {
    std::vector<ModalTerm> out = terms_;
    for (ModalTerm& t : out) t.radial = t.radial * s;
    return ModalField(a_, std::move(out));
}

ScalarField ModalField::sample(GridPtr grid, Parity parity, OuterBc bc) const {
    return ScalarField::sample(std::move(grid), parity, bc, [this](double r, double z) { return (*this)(r, z); });
}

namespace {

constexpr int max_modes = 5;

std::vector<ModalTerm> random_terms(SeededRng& rng, const Polynomial& envelope) {
    const int n_modes = 1 + static_cast<int>(rng.uniform() * max_modes);
    std::vector<ModalTerm> terms;
    for (int i = 0; i < n_modes; ++i) {
        ModalTerm t;
        t.mode = static_cast<int>(rng.uniform() * max_modes);
        const double p0 = rng.uniform(-1.0, 1.0);
        const double p1 = rng.uniform(-1.0, 1.0);
        t.radial = envelope * Polynomial({p0, 0.0, p1});
        t.cos_coef = rng.uniform(-1.0, 1.0);
        t.sin_coef = t.mode == 0 ? 0.0 : rng.uniform(-1.0, 1.0);
        terms.push_back(t);
    }
    return terms;
}

}  // namespace

std::vector<EllipticSample> random_vorticity_family(double radius, double half_height, std::uint64_t seed,
                                                    int count) {
    SeededRng rng(seed);
    const Polynomial envelope({radius * radius, 0.0, -1.0});
    std::vector<EllipticSample> out;
    for (int i = 0; i < count; ++i) {
        EllipticSample s;
        s.vorticity = ModalField(half_height, random_terms(rng, envelope));
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<EllipticSample> axis_vanishing_family(double radius, double half_height, std::uint64_t seed,
                                                  int count) {
    SeededRng rng(seed ^ 0x5a5a5a5aULL);
    const Polynomial envelope({0.0, 0.0, radius * radius, 0.0, -1.0});
    std::vector<EllipticSample> out;
    for (int i = 0; i < count; ++i) {
        EllipticSample s;
        s.stream = ModalField(half_height, random_terms(rng, envelope));
        s.vorticity = s.stream.negative_operator(2.0);
        s.has_exact_stream = true;
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace axicyl
