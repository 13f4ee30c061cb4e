#pragma once

// Two-band non-Hermitian models H = d_R.sigma + i d_I.sigma + d0*sigma0,
// reduced to their spectral data: the discriminant
// |d_R|^2 - |d_I|^2 + 2i (d_R.d_I) and the eigenvalue pair
// d0 +- sqrt(discriminant). EPs are the zeros of the discriminant.

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <utility>

#include "eptopo/geometry.hpp"

namespace eptopo {

struct ModelEval {
    std::array<double, 3> d_r{0.0, 0.0, 0.0};
    std::array<double, 3> d_i{0.0, 0.0, 0.0};
    std::complex<double> d0{0.0, 0.0};
};

class TwoBandModel {
  public:
    using Evaluator = std::function<ModelEval(ParamPoint)>;

    TwoBandModel(std::string name, Evaluator eval)
        : name_(std::move(name)), eval_(std::move(eval)) {}

    // H(k) = k_x sigma_x + k_y sigma_y + i b_x sigma_x: the Dirac cone
    // with a uniform anti-Hermitian gain/loss term. EPs at (0, +-b_x).
    static TwoBandModel nh_dirac(double b_x)
    {
        return TwoBandModel("nh_dirac", [b_x](ParamPoint p) {
            ModelEval e;
            e.d_r = {p.x, p.y, 0.0};
            e.d_i = {b_x, 0.0, 0.0};
            return e;
        });
    }

    // Discriminant (z - z1)(z - z2) with z = x + iy: the canonical
    // square-root pair. Realized with the complex vector
    // d = (z - (z1+z2)/2, i (z1-z2)/2, 0), whose bilinear square is the
    // discriminant; components are polynomial in (x, y).
    static TwoBandModel square_root(std::complex<double> z1, std::complex<double> z2)
    {
        const std::complex<double> center = 0.5 * (z1 + z2);
        const std::complex<double> d2 = std::complex<double>(0.0, 1.0) * 0.5 * (z1 - z2);
        return TwoBandModel("square_root", [center, d2](ParamPoint p) {
            const std::complex<double> d1 = std::complex<double>(p.x, p.y) - center;
            ModelEval e;
            e.d_r = {d1.real(), d2.real(), 0.0};
            e.d_i = {d1.imag(), d2.imag(), 0.0};
            return e;
        });
    }

    // Generic two-level H = [[l1, g], [g, l2]]: average level on the
    // identity, half-splitting on sigma_z, coupling on sigma_x.
    static TwoBandModel generic_two_level(
        std::function<std::complex<double>(ParamPoint)> lambda1,
        std::function<std::complex<double>(ParamPoint)> lambda2,
        std::complex<double> g)
    {
        return TwoBandModel("generic_two_level",
                            [l1 = std::move(lambda1), l2 = std::move(lambda2), g](ParamPoint p) {
            const std::complex<double> a = l1(p);
            const std::complex<double> b = l2(p);
            const std::complex<double> delta = 0.5 * (a - b);
            ModelEval e;
            e.d_r = {g.real(), 0.0, delta.real()};
            e.d_i = {g.imag(), 0.0, delta.imag()};
            e.d0 = 0.5 * (a + b);
            return e;
        });
    }

    ModelEval operator()(ParamPoint p) const { return eval_(p); }
    const std::string& name() const { return name_; }

  private:
    std::string name_;
    Evaluator eval_;
};

inline std::complex<double> discriminant_of(const ModelEval& e)
{
    const auto& r = e.d_r;
    const auto& i = e.d_i;
    const double nr = r[0] * r[0] + r[1] * r[1] + r[2] * r[2];
    const double ni = i[0] * i[0] + i[1] * i[1] + i[2] * i[2];
    const double d = r[0] * i[0] + r[1] * i[1] + r[2] * i[2];
    return {nr - ni, 2.0 * d};
}

inline std::complex<double> discriminant(const TwoBandModel& model, ParamPoint p)
{
    return discriminant_of(model(p));
}

// Unordered at this level; branch assignment along a path is a
// continuation concern.
inline std::pair<std::complex<double>, std::complex<double>> eigenvalues(
    const TwoBandModel& model, ParamPoint p)
{
    const ModelEval e = model(p);
    const std::complex<double> root = std::sqrt(discriminant_of(e));
    return {e.d0 + root, e.d0 - root};
}

}  // namespace eptopo
