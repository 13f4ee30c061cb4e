#pragma once

// The two prototype loops in C \ {-1, +1} and the piecewise linear
// homotopy between them, certified on a finite grid. alpha traces the
// composite loop (one CW circle of radius 1 about -1, then one about
// +1); beta is a single CW circuit built from arcs of radii 2, 4, 2.
// The homotopy interpolates linearly between matching pieces; the
// certificate checks the endpoint identities, continuity across the
// three time breakpoints, and that no grid sample touches a puncture.

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace eptopo {

namespace detail {

inline std::complex<double> cw_turn(double angle)
{
    // e^{-i * angle}
    return std::polar(1.0, -angle);
}

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// alpha pieces (t in [0,1/2] and [1/2,1])
inline std::complex<double> alpha_lo(double t) { return -1.0 + cw_turn(2.0 * kTwoPi * t); }
inline std::complex<double> alpha_hi(double t) { return 1.0 - cw_turn(2.0 * kTwoPi * (t - 0.5)); }

// beta pieces (t in [0,1/4], [1/4,3/4], [3/4,1])
inline std::complex<double> beta_lo(double t) { return -2.0 + 2.0 * cw_turn(2.0 * kTwoPi * t); }
inline std::complex<double> beta_mid(double t) { return -4.0 * cw_turn(kTwoPi * (t - 0.25)); }
inline std::complex<double> beta_hi(double t) { return 2.0 + 2.0 * cw_turn(2.0 * kTwoPi * (t - 0.75)); }

}  // namespace detail

inline std::complex<double> supplement_alpha(double t)
{
    if (t < 0.0 || t > 1.0)
        throw std::domain_error("loop parameter t must lie in [0,1]");
    return t <= 0.5 ? detail::alpha_lo(t) : detail::alpha_hi(t);
}

inline std::complex<double> supplement_beta(double t)
{
    if (t < 0.0 || t > 1.0)
        throw std::domain_error("loop parameter t must lie in [0,1]");
    if (t <= 0.25)
        return detail::beta_lo(t);
    if (t <= 0.75)
        return detail::beta_mid(t);
    return detail::beta_hi(t);
}

// H(t,0) = alpha, H(t,1) = beta, four pieces glued at t = 1/4, 1/2, 3/4.
inline std::complex<double> supplement_homotopy(double t, double s)
{
    if (t < 0.0 || t > 1.0 || s < 0.0 || s > 1.0)
        throw std::domain_error("homotopy parameters must lie in [0,1]^2");
    using namespace detail;
    if (t <= 0.25)
        return (1.0 - s) * alpha_lo(t) + s * beta_lo(t);
    if (t <= 0.5)
        return (1.0 - s) * alpha_lo(t) + s * beta_mid(t);
    if (t <= 0.75)
        return (1.0 - s) * alpha_hi(t) + s * beta_mid(t);
    return (1.0 - s) * alpha_hi(t) + s * beta_hi(t);
}

struct HomotopyGrid {
    int nt = 0;
    int ns = 0;
    double min_puncture_distance = 0.0;
    double min_distance_t = 0.0;  // grid location of the minimum
    double min_distance_s = 0.0;
    double endpoint_residual_alpha = 0.0;
    double endpoint_residual_beta = 0.0;
    double max_breakpoint_jump = 0.0;
};

struct PunctureHit : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline HomotopyGrid verify_homotopy(int nt, int ns)
{
    if (nt < 128 || ns < 128)
        throw std::invalid_argument("homotopy grid must be at least 128 x 128");
    using namespace detail;

    HomotopyGrid cert;
    cert.nt = nt;
    cert.ns = ns;

    double min_dist = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= nt; ++i) {
        const double t = static_cast<double>(i) / nt;
        cert.endpoint_residual_alpha = std::max(
            cert.endpoint_residual_alpha, std::abs(supplement_homotopy(t, 0.0) - supplement_alpha(t)));
        cert.endpoint_residual_beta = std::max(
            cert.endpoint_residual_beta, std::abs(supplement_homotopy(t, 1.0) - supplement_beta(t)));
        for (int j = 0; j <= ns; ++j) {
            const double s = static_cast<double>(j) / ns;
            const std::complex<double> h = supplement_homotopy(t, s);
            const double d = std::min(std::abs(h - 1.0), std::abs(h + 1.0));
            if (d < min_dist) {
                min_dist = d;
                cert.min_distance_t = t;
                cert.min_distance_s = s;
            }
        }
    }
    cert.min_puncture_distance = min_dist;

    // Seam continuity: evaluate the adjoining pieces on either side of
    // each breakpoint for every s.
    auto piece = [](int idx, double t, double s) -> std::complex<double> {
        switch (idx) {
            case 0: return (1.0 - s) * alpha_lo(t) + s * beta_lo(t);
            case 1: return (1.0 - s) * alpha_lo(t) + s * beta_mid(t);
            case 2: return (1.0 - s) * alpha_hi(t) + s * beta_mid(t);
            default: return (1.0 - s) * alpha_hi(t) + s * beta_hi(t);
        }
    };
    const double breakpoints[] = {0.25, 0.5, 0.75};
    for (int b = 0; b < 3; ++b) {
        for (int j = 0; j <= ns; ++j) {
            const double s = static_cast<double>(j) / ns;
            const double jump = std::abs(piece(b, breakpoints[b], s) - piece(b + 1, breakpoints[b], s));
            cert.max_breakpoint_jump = std::max(cert.max_breakpoint_jump, jump);
        }
    }

    if (!(cert.min_puncture_distance > 0.0))
        throw PunctureHit("homotopy grid touches a puncture at t=" +
                          std::to_string(cert.min_distance_t) +
                          ", s=" + std::to_string(cert.min_distance_s));
    return cert;
}

}  // namespace eptopo
