#pragma once

// Closed sampled loops in the parameter plane. A loop is a closed
// polyline (first sample == last sample); parametric builders produce
// the initial sampling and tracing refines it by midpoint subdivision,
// which never changes the geometry.

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "eptopo/geometry.hpp"
#include "eptopo/word.hpp"

namespace eptopo {

struct Loop {
    std::vector<ParamPoint> samples;  // closed: samples.front() == samples.back()

    std::size_t size() const { return samples.size(); }
};

inline void validate_loop(const Loop& loop)
{
    if (loop.samples.size() < 4)
        throw std::invalid_argument("loop needs at least 3 distinct samples");
    if (!(loop.samples.front() == loop.samples.back()))
        throw std::invalid_argument("loop is not closed");
}

inline ParamPoint loop_min(const Loop& loop)
{
    ParamPoint m = loop.samples.front();
    for (const ParamPoint& p : loop.samples) {
        m.x = std::min(m.x, p.x);
        m.y = std::min(m.y, p.y);
    }
    return m;
}

inline ParamPoint loop_max(const Loop& loop)
{
    ParamPoint m = loop.samples.front();
    for (const ParamPoint& p : loop.samples) {
        m.x = std::max(m.x, p.x);
        m.y = std::max(m.y, p.y);
    }
    return m;
}

// Bounding-box diagonal; the clearance default is scaled by this.
inline double loop_diameter(const Loop& loop)
{
    const ParamPoint lo = loop_min(loop), hi = loop_max(loop);
    return std::hypot(hi.x - lo.x, hi.y - lo.y);
}

// Midpoint subdivision: each segment split in two.
inline Loop subdivide(const Loop& loop)
{
    Loop out;
    out.samples.reserve(2 * loop.samples.size());
    for (std::size_t i = 0; i + 1 < loop.samples.size(); ++i) {
        const ParamPoint a = loop.samples[i], b = loop.samples[i + 1];
        out.samples.push_back(a);
        out.samples.push_back(0.5 * (a + b));
    }
    out.samples.push_back(loop.samples.back());
    return out;
}

// Circle with n segments; clockwise means decreasing angle.
inline constexpr int kLoopMaxSamples = 1 << 22;

inline Loop circle_loop(ParamPoint center, double radius, bool clockwise, int n,
                        double start_angle = 0.0)
{
    if (!(radius > 0.0))
        throw std::invalid_argument("circle radius must be positive");
    if (n < 8 || n > kLoopMaxSamples)
        throw std::invalid_argument("circle segment count out of range");
    Loop loop;
    loop.samples.reserve(static_cast<std::size_t>(n) + 1);
    const double sign = clockwise ? -1.0 : 1.0;
    for (int i = 0; i <= n; ++i) {
        const double th = start_angle + sign * 2.0 * std::numbers::pi * i / n;
        loop.samples.push_back({center.x + radius * std::cos(th),
                                center.y + radius * std::sin(th)});
    }
    loop.samples.back() = loop.samples.front();  // exact closure
    return loop;
}

inline Loop polyline_loop(std::vector<ParamPoint> points)
{
    if (points.size() < 3)
        throw std::invalid_argument("polyline loop needs at least 3 points");
    Loop loop{std::move(points)};
    if (!(loop.samples.front() == loop.samples.back()))
        loop.samples.push_back(loop.samples.front());
    return loop;
}

// Piecewise arc/segment loops.
struct ArcSegment {
    bool is_arc = true;
    // arc fields
    ParamPoint center{};
    double radius = 0.0;
    double from_angle = 0.0;
    double to_angle = 0.0;  // direction = sign(to - from)
    // segment fields
    ParamPoint from{};
    ParamPoint to{};
};

inline Loop arcs_loop(const std::vector<ArcSegment>& segments, int total_samples)
{
    if (segments.empty())
        throw std::invalid_argument("arcs loop needs at least one segment");
    if (total_samples < 16 || total_samples > kLoopMaxSamples)
        throw std::invalid_argument("arcs loop sample count out of range");

    auto seg_start = [](const ArcSegment& s) -> ParamPoint {
        if (!s.is_arc)
            return s.from;
        return {s.center.x + s.radius * std::cos(s.from_angle),
                s.center.y + s.radius * std::sin(s.from_angle)};
    };
    auto seg_end = [](const ArcSegment& s) -> ParamPoint {
        if (!s.is_arc)
            return s.to;
        return {s.center.x + s.radius * std::cos(s.to_angle),
                s.center.y + s.radius * std::sin(s.to_angle)};
    };
    for (const ArcSegment& s : segments)
        if (s.is_arc && !(s.radius > 0.0))
            throw std::invalid_argument("arc radius must be positive");

    auto seg_length = [](const ArcSegment& s) {
        return s.is_arc ? std::abs(s.to_angle - s.from_angle) * s.radius
                        : distance(s.from, s.to);
    };

    double total_len = 0.0;
    for (const ArcSegment& s : segments)
        total_len += seg_length(s);
    if (!(total_len > 0.0))
        throw std::invalid_argument("arcs loop has zero length");

    // Adjacent pieces must join; the final piece must close the loop.
    const double join_tol = 1e-9 * std::max(1.0, total_len);
    for (std::size_t i = 0; i < segments.size(); ++i) {
        const ParamPoint e = seg_end(segments[i]);
        const ParamPoint n = seg_start(segments[(i + 1) % segments.size()]);
        if (distance(e, n) > join_tol)
            throw std::invalid_argument("arc segments do not join into a closed loop");
    }

    Loop loop;
    for (const ArcSegment& s : segments) {
        const int ns = std::max(8, static_cast<int>(std::lround(
                                       total_samples * seg_length(s) / total_len)));
        for (int i = 0; i < ns; ++i) {
            const double t = static_cast<double>(i) / ns;
            if (s.is_arc) {
                const double th = s.from_angle + t * (s.to_angle - s.from_angle);
                loop.samples.push_back({s.center.x + s.radius * std::cos(th),
                                        s.center.y + s.radius * std::sin(th)});
            } else {
                loop.samples.push_back(s.from + t * (s.to - s.from));
            }
        }
    }
    loop.samples.push_back(loop.samples.front());
    return loop;
}

// Loop realizing a prescribed word: for each letter, walk straight from
// the basepoint to a small circle around the letter's EP, traverse it
// once (CW for exponent +1), and walk back. The approach paths stay on
// the basepoint side of every cut ray (cuts point away from the EP
// centroid), so the traced word is exactly the given one after free
// reduction. The circle entry is rotated off the approach axis so no
// sample or segment is collinear with a cut.
inline Loop word_loop(const Word& w, const std::vector<ParamPoint>& eps,
                      ParamPoint basepoint, double ring_radius, int samples_per_letter)
{
    if (eps.empty())
        throw std::invalid_argument("word loop needs at least one EP");
    if (!(ring_radius > 0.0))
        throw std::invalid_argument("ring radius must be positive");
    if (samples_per_letter < 32)
        throw std::invalid_argument("need at least 32 samples per letter");

    constexpr double kEntrySkew = 0.3183;  // radians off the approach axis

    Loop loop;
    loop.samples.push_back(basepoint);
    for (const Letter& l : w.letters) {
        validate_letter(l);
        if (l.generator >= static_cast<int>(eps.size()))
            throw std::invalid_argument("word letter has no matching EP");
        const ParamPoint ep = eps[static_cast<std::size_t>(l.generator)];
        const Vec2 back = normalized(basepoint - ep);
        const double base_angle = std::atan2(back.y, back.x) + kEntrySkew;
        const ParamPoint entry{ep.x + ring_radius * std::cos(base_angle),
                               ep.y + ring_radius * std::sin(base_angle)};

        const int n_seg = samples_per_letter / 4;
        const int n_ring = samples_per_letter;
        for (int i = 1; i <= n_seg; ++i)
            loop.samples.push_back(basepoint +
                                   (static_cast<double>(i) / n_seg) * (entry - basepoint));
        const double sign = l.exponent > 0 ? -1.0 : 1.0;  // CW-positive convention
        for (int i = 1; i <= n_ring; ++i) {
            const double th = base_angle + sign * 2.0 * std::numbers::pi * i / n_ring;
            loop.samples.push_back({ep.x + ring_radius * std::cos(th),
                                    ep.y + ring_radius * std::sin(th)});
        }
        loop.samples.back() = entry;  // exact ring closure
        for (int i = 1; i <= n_seg; ++i)
            loop.samples.push_back(entry +
                                   (static_cast<double>(i) / n_seg) * (basepoint - entry));
        loop.samples.back() = basepoint;
    }
    if (loop.samples.size() < 4) {  // empty word: a tiny contractible triangle
        const double r = ring_radius;
        loop.samples = {basepoint,
                        basepoint + Vec2{r, 0.0},
                        basepoint + Vec2{0.0, r},
                        basepoint};
    }
    return loop;
}

}  // namespace eptopo
