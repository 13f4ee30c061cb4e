#pragma once

#include <cmath>
#include <complex>
#include <stdexcept>

namespace eptopo {

// 2D point / vector in the control-parameter plane.
struct Vec2 {
    double x = 0.0;
    double y = 0.0;

    friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
    friend Vec2 operator*(Vec2 v, double s) { return {s * v.x, s * v.y}; }
    friend bool operator==(const Vec2&, const Vec2&) = default;
};

using ParamPoint = Vec2;

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }

// z-component of the 3D cross product; >0 when b is CCW of a.
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }

inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }

inline Vec2 normalized(Vec2 v)
{
    const double n = norm(v);
    if (n == 0.0)
        throw std::invalid_argument("cannot normalize a zero vector");
    return {v.x / n, v.y / n};
}

inline std::complex<double> to_complex(Vec2 v) { return {v.x, v.y}; }

inline Vec2 from_complex(std::complex<double> z) { return {z.real(), z.imag()}; }

}  // namespace eptopo
