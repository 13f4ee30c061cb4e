#pragma once

// Symbolic word of a sampled loop: walk the polyline and record every
// transversal crossing of an EP cut ray as a signed generator letter,
// clockwise-positive. The freely reduced letter sequence is the homotopy
// class of the loop relative to these generators.

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "eptopo/ep_finder.hpp"
#include "eptopo/geometry.hpp"
#include "eptopo/loop.hpp"
#include "eptopo/word.hpp"

namespace eptopo {

struct CutRay {
    ParamPoint origin;  // the EP
    Vec2 direction;     // unit vector; the cut is origin + r*direction, r >= 0
};

struct TangentCrossing : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct AmbiguousBasepoint : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Default cuts point radially away from the centroid of the EP set, so
// the rays of a two-EP pair never intersect each other.
inline std::vector<CutRay> default_cut_rays(const std::vector<ParamPoint>& eps)
{
    if (eps.empty())
        throw std::invalid_argument("no EPs to attach cuts to");
    ParamPoint centroid{0.0, 0.0};
    for (const ParamPoint& p : eps)
        centroid = centroid + p;
    centroid = (1.0 / static_cast<double>(eps.size())) * centroid;

    std::vector<CutRay> rays;
    rays.reserve(eps.size());
    for (const ParamPoint& p : eps) {
        const Vec2 d = p - centroid;
        rays.push_back({p, norm(d) > 0.0 ? normalized(d) : Vec2{1.0, 0.0}});
    }
    return rays;
}

inline std::vector<CutRay> make_cut_rays(const std::vector<ParamPoint>& eps,
                                         const std::vector<Vec2>& directions)
{
    if (eps.size() != directions.size())
        throw std::invalid_argument("one cut direction per EP required");
    std::vector<CutRay> rays;
    rays.reserve(eps.size());
    for (std::size_t i = 0; i < eps.size(); ++i)
        rays.push_back({eps[i], normalized(directions[i])});
    return rays;
}

// Per ray, samples are classified by their signed side of the cut line
// (zero within tolerance) and maximal zero runs are resolved by the
// signs around them: opposite signs are one transversal crossing, equal
// signs a tangent touch, which leaves the homotopy class alone and is
// ignored. A crossing on the anti-ray (behind the EP) is ignored too.
inline Word loop_word(const Loop& loop, const std::vector<CutRay>& rays)
{
    validate_loop(loop);

    const double scale = std::max(loop_diameter(loop), 1e-12);
    const double side_tol = 1e-12 * scale;
    const double ray_origin_tol = 1e-9 * scale;

    // Loop must not start on a cut; the basepoint fixes the word's
    // conjugacy representative.
    for (const CutRay& ray : rays) {
        const Vec2 rel = loop.samples.front() - ray.origin;
        if (std::abs(cross(ray.direction, rel)) <= side_tol &&
            dot(ray.direction, rel) > ray_origin_tol)
            throw AmbiguousBasepoint("loop basepoint lies on a cut ray");
    }

    struct Crossing {
        double where = 0.0;  // traversal position: segment index + local parameter
        Letter letter;
    };
    std::vector<Crossing> crossings;

    const std::size_t n = loop.samples.size() - 1;  // unique samples; sample n == sample 0
    std::vector<int> sgn(n);
    std::vector<double> sval(n), rval(n);

    for (std::size_t g = 0; g < rays.size(); ++g) {
        const CutRay& ray = rays[g];
        std::ptrdiff_t first_nonzero = -1;
        for (std::size_t j = 0; j < n; ++j) {
            const Vec2 rel = loop.samples[j] - ray.origin;
            sval[j] = cross(ray.direction, rel);
            rval[j] = dot(ray.direction, rel);
            sgn[j] = std::abs(sval[j]) <= side_tol ? 0 : (sval[j] > 0.0 ? 1 : -1);
            if (sgn[j] != 0 && first_nonzero < 0)
                first_nonzero = static_cast<std::ptrdiff_t>(j);
        }
        if (first_nonzero < 0)
            throw TangentCrossing("loop is collinear with a cut ray; resample the loop");

        auto emit = [&](int prev_sign, double where, double r, bool run_has_basepoint) {
            if (r <= -ray_origin_tol)
                return;  // anti-ray
            if (r <= ray_origin_tol)
                throw TangentCrossing("loop crosses a cut at its EP endpoint");
            if (run_has_basepoint)
                throw AmbiguousBasepoint("loop basepoint lies on a cut ray");
            // side decreasing (+ to -) means clockwise passage: CW-positive
            crossings.push_back({where, Letter{static_cast<int>(g), prev_sign}});
        };

        int prev_sign = sgn[static_cast<std::size_t>(first_nonzero)];
        std::size_t prev_idx = static_cast<std::size_t>(first_nonzero);
        std::vector<std::size_t> run;
        for (std::size_t k = 1; k <= n; ++k) {
            const std::size_t j = (static_cast<std::size_t>(first_nonzero) + k) % n;
            if (sgn[j] == 0) {
                run.push_back(j);
                continue;
            }
            if (!run.empty()) {
                // zero run bracketed by prev_sign and sgn[j]
                if (sgn[j] != prev_sign) {
                    bool has_basepoint = false;
                    bool positive = false, negative = false;
                    for (std::size_t idx : run) {
                        has_basepoint = has_basepoint || idx == 0;
                        positive = positive || rval[idx] > ray_origin_tol;
                        negative = negative || rval[idx] < -ray_origin_tol;
                    }
                    if (positive && negative)
                        throw TangentCrossing("loop slides along a cut across its EP");
                    emit(prev_sign, static_cast<double>(run.front()), rval[run.front()],
                         has_basepoint && positive);
                }
                run.clear();
            } else if (sgn[j] != prev_sign) {
                // clean sign change on the segment prev_idx -> j
                const double sp = sval[prev_idx], sq = sval[j];
                const double tloc = sp / (sp - sq);
                const ParamPoint x =
                    loop.samples[prev_idx] + tloc * (loop.samples[j] - loop.samples[prev_idx]);
                emit(prev_sign, static_cast<double>(prev_idx) + tloc,
                     dot(ray.direction, x - ray.origin), false);
            }
            prev_sign = sgn[j];
            prev_idx = j;
        }
    }

    std::sort(crossings.begin(), crossings.end(),
              [](const Crossing& a, const Crossing& b) { return a.where < b.where; });

    Word w;
    w.letters.reserve(crossings.size());
    for (const Crossing& c : crossings)
        w.letters.push_back(c.letter);
    return reduce_free(w);
}

inline Word loop_word(const Loop& loop, const std::vector<EPLocation>& eps,
                      const std::vector<Vec2>& cut_directions)
{
    std::vector<ParamPoint> pts;
    pts.reserve(eps.size());
    for (const EPLocation& e : eps)
        pts.push_back(e.point);
    return loop_word(loop, make_cut_rays(pts, cut_directions));
}

}  // namespace eptopo
