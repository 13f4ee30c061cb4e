#pragma once

// Stereographic projection between the unit sphere (minus its north
// pole) and the extended parameter plane. Infinity is a first-class
// tagged value on the plane side, never a floating-point Inf.

#include <cmath>
#include <ostream>
#include <stdexcept>
#include <vector>

namespace eptopo {

struct SpherePoint {
    double n = 0.0;    // n-tilde
    double chi = 0.0;  // chi-tilde
    double xi = 0.0;   // xi-tilde (projection axis; north pole is xi = 1)

    friend bool operator==(const SpherePoint&, const SpherePoint&) = default;
};

struct PlanePoint {
    double n = 0.0;
    double chi = 0.0;

    friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct ExtendedPlanePoint {
    PlanePoint point{};
    bool is_infinity = false;

    static ExtendedPlanePoint infinity() { return {{}, true}; }
    static ExtendedPlanePoint finite(PlanePoint p) { return {p, false}; }
};

inline double sphere_norm_residual(const SpherePoint& p)
{
    return std::abs(p.n * p.n + p.chi * p.chi + p.xi * p.xi - 1.0);
}

// Projection from the north pole onto the xi = 0 plane. The pole itself
// maps to the tagged point at infinity.
inline ExtendedPlanePoint project(const SpherePoint& p)
{
    const double denom = 1.0 - p.xi;
    if (std::abs(denom) < 1e-14)
        return ExtendedPlanePoint::infinity();
    return ExtendedPlanePoint::finite({p.n / denom, p.chi / denom});
}

// Inverse projection with zeta = 1 + n^2 + chi^2; the image always lies
// on the unit sphere.
inline SpherePoint unproject(const PlanePoint& q)
{
    if (!std::isfinite(q.n) || !std::isfinite(q.chi))
        throw std::invalid_argument("unproject requires a finite plane point");
    const double zeta = 1.0 + q.n * q.n + q.chi * q.chi;
    return {2.0 * q.n / zeta, 2.0 * q.chi / zeta, (q.n * q.n + q.chi * q.chi - 1.0) / zeta};
}

inline std::vector<ExtendedPlanePoint> project_curve(const std::vector<SpherePoint>& curve)
{
    std::vector<ExtendedPlanePoint> out;
    out.reserve(curve.size());
    for (const SpherePoint& p : curve)
        out.push_back(project(p));
    return out;
}

// Plot-ready polylines: consecutive finite runs, split where the curve
// passes through infinity.
inline std::vector<std::vector<PlanePoint>> split_at_infinity(
    const std::vector<ExtendedPlanePoint>& pts)
{
    std::vector<std::vector<PlanePoint>> polylines;
    std::vector<PlanePoint> current;
    for (const ExtendedPlanePoint& p : pts) {
        if (p.is_infinity) {
            if (!current.empty()) {
                polylines.push_back(std::move(current));
                current.clear();
            }
        } else {
            current.push_back(p.point);
        }
    }
    if (!current.empty())
        polylines.push_back(std::move(current));
    return polylines;
}

}  // namespace eptopo
