#pragma once

// EP location: coarse grid scan for simultaneous sign changes of the two
// real EP conditions F1 = |d_R|^2 - |d_I|^2 and F2 = d_R.d_I, followed by
// damped Newton on the 2x2 system with a central-difference Jacobian.

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "eptopo/geometry.hpp"
#include "eptopo/model.hpp"

namespace eptopo {

struct Rect {
    double x0 = 0.0, x1 = 0.0;
    double y0 = 0.0, y1 = 0.0;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double scale() const { return std::max(width(), height()); }
};

struct EPLocation {
    ParamPoint point;
    double residual = 0.0;  // max(|F1|, |F2|)
};

struct EmptyRegion : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

struct EPConditions {
    double f1 = 0.0;
    double f2 = 0.0;
    double residual() const { return std::max(std::abs(f1), std::abs(f2)); }
};

inline EPConditions ep_conditions(const TwoBandModel& model, ParamPoint p)
{
    const std::complex<double> d = discriminant(model, p);
    return {d.real(), 0.5 * d.imag()};
}

inline bool sign_change(double a, double b, double c, double d)
{
    const double lo = std::min({a, b, c, d});
    const double hi = std::max({a, b, c, d});
    return lo <= 0.0 && hi >= 0.0;
}

}  // namespace detail

// Returns located EPs sorted lexicographically by (x, y). Candidates
// that fail to converge within 50 Newton steps are dropped with a
// warning; duplicates within 10*tol are merged keeping the smaller
// residual.
inline std::vector<EPLocation> find_eps(const TwoBandModel& model, const Rect& region,
                                        int grid_n, double tol,
                                        std::vector<std::string>* warnings = nullptr)
{
    if (!(region.width() > 0.0) || !(region.height() > 0.0) ||
        !std::isfinite(region.width()) || !std::isfinite(region.height()))
        throw EmptyRegion("degenerate search region");
    if (grid_n < 16 || grid_n > 4096)
        throw std::invalid_argument("grid_n must lie in [16, 4096]");
    if (!(tol > 0.0))
        throw std::invalid_argument("tolerance must be positive");

    const int n = grid_n;
    std::vector<double> f1((n + 1) * (n + 1)), f2((n + 1) * (n + 1));
    auto at = [n](int i, int j) { return j * (n + 1) + i; };
    for (int j = 0; j <= n; ++j) {
        const double y = region.y0 + region.height() * j / n;
        for (int i = 0; i <= n; ++i) {
            const double x = region.x0 + region.width() * i / n;
            const auto c = detail::ep_conditions(model, {x, y});
            f1[at(i, j)] = c.f1;
            f2[at(i, j)] = c.f2;
        }
    }

    const double h = 1e-6 * region.scale();
    auto newton = [&](ParamPoint p, EPLocation& out) -> bool {
        auto cond = detail::ep_conditions(model, p);
        for (int iter = 0; iter < 50; ++iter) {
            if (cond.residual() <= tol) {
                out = {p, cond.residual()};
                return true;
            }
            const auto cxp = detail::ep_conditions(model, {p.x + h, p.y});
            const auto cxm = detail::ep_conditions(model, {p.x - h, p.y});
            const auto cyp = detail::ep_conditions(model, {p.x, p.y + h});
            const auto cym = detail::ep_conditions(model, {p.x, p.y - h});
            const double j11 = (cxp.f1 - cxm.f1) / (2 * h), j12 = (cyp.f1 - cym.f1) / (2 * h);
            const double j21 = (cxp.f2 - cxm.f2) / (2 * h), j22 = (cyp.f2 - cym.f2) / (2 * h);
            const double det = j11 * j22 - j12 * j21;
            if (det == 0.0 || !std::isfinite(det))
                return false;
            const double sx = (j22 * cond.f1 - j12 * cond.f2) / det;
            const double sy = (-j21 * cond.f1 + j11 * cond.f2) / det;
            // Damping: halve the step until the residual decreases.
            double lambda = 1.0;
            bool moved = false;
            for (int half = 0; half < 30; ++half) {
                const ParamPoint trial{p.x - lambda * sx, p.y - lambda * sy};
                const auto ct = detail::ep_conditions(model, trial);
                if (ct.residual() < cond.residual()) {
                    p = trial;
                    cond = ct;
                    moved = true;
                    break;
                }
                lambda *= 0.5;
            }
            if (!moved)
                return false;
        }
        if (cond.residual() <= tol) {
            out = {p, cond.residual()};
            return true;
        }
        return false;
    };

    std::vector<EPLocation> eps;
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i < n; ++i) {
            const bool c1 = detail::sign_change(f1[at(i, j)], f1[at(i + 1, j)],
                                                f1[at(i, j + 1)], f1[at(i + 1, j + 1)]);
            const bool c2 = detail::sign_change(f2[at(i, j)], f2[at(i + 1, j)],
                                                f2[at(i, j + 1)], f2[at(i + 1, j + 1)]);
            if (!c1 || !c2)
                continue;
            const ParamPoint center{region.x0 + region.width() * (i + 0.5) / n,
                                    region.y0 + region.height() * (j + 0.5) / n};
            EPLocation loc;
            if (!newton(center, loc)) {
                if (warnings)
                    warnings->push_back("no convergence from cell (" + std::to_string(i) +
                                        "," + std::to_string(j) + "); candidate dropped");
                continue;
            }
            // Newton may wander to a root outside the requested rectangle;
            // allow one cell of slack, drop anything beyond.
            const double cx = region.width() / n, cy = region.height() / n;
            if (loc.point.x < region.x0 - cx || loc.point.x > region.x1 + cx ||
                loc.point.y < region.y0 - cy || loc.point.y > region.y1 + cy)
                continue;
            const double merge_radius = 10.0 * tol;
            bool merged = false;
            for (EPLocation& known : eps) {
                if (distance(known.point, loc.point) <= merge_radius) {
                    if (loc.residual < known.residual)
                        known = loc;
                    merged = true;
                    break;
                }
            }
            if (!merged)
                eps.push_back(loc);
        }
    }

    // Lexicographic (x, y) order with coordinates quantized well above the
    // solver noise, so the ordering is stable run to run.
    const double quantum = std::max(100.0 * tol, 1e-9 * region.scale());
    std::sort(eps.begin(), eps.end(), [quantum](const EPLocation& a, const EPLocation& b) {
        const long long ax = std::llround(a.point.x / quantum);
        const long long bx = std::llround(b.point.x / quantum);
        if (ax != bx)
            return ax < bx;
        return std::llround(a.point.y / quantum) < std::llround(b.point.y / quantum);
    });
    return eps;
}

}  // namespace eptopo
