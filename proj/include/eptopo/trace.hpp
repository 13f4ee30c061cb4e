#pragma once

// Branch continuation along a loop: the eigenvalue pair is computed at
// every sample and matched step to step by minimal displacement; the
// principal-branch discriminant argument is accumulated separately and
// unwound under the per-step constraint |delta arg| < pi, refining the
// sampling by subdivision until that holds.
//
// Sign conventions: d_arg is the plain mathematical accumulated argument
// (CCW-positive), so a CW loop once around both EPs of the square-root
// model has d_arg = -4*pi. The spectral vorticity is CW-positive,
// nu = -d_arg/(4*pi), matching the word vorticity of the CW-positive
// letter convention.
//
// The initial sampling must resolve the loop's geometry: every segment
// has to subtend less than a half-turn as seen from each EP. Refinement
// then handles close passes; what it cannot resolve within the sample
// budget is reported as UnresolvedBranching, never returned wrong.

#include <cmath>
#include <complex>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "eptopo/ep_finder.hpp"
#include "eptopo/loop.hpp"
#include "eptopo/model.hpp"
#include "eptopo/word.hpp"

namespace eptopo {

struct ClearanceViolation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnresolvedBranching : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonQuantized : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct BranchTrace {
    std::vector<double> t;  // sample parameters in [0,1]
    std::vector<std::complex<double>> branch_plus;
    std::vector<std::complex<double>> branch_minus;
    std::vector<std::complex<double>> disc;
    bool swapped = false;  // monodromy permutation: identity or the transposition
    double d_arg = 0.0;    // total increment of arg(discriminant), CCW-positive
    int samples_used = 0;
};

struct TraceOptions {
    double clearance_factor = 1e-3;    // of the loop diameter
    int max_samples = 1 << 20;
    double arg_step_limit = 0.999 * std::numbers::pi;
};

inline BranchTrace trace_loop(const TwoBandModel& model, Loop loop, int n,
                              const std::vector<EPLocation>& eps = {},
                              const TraceOptions& opts = {})
{
    validate_loop(loop);
    if (n < 64)
        throw std::invalid_argument("trace needs at least 64 samples");
    if (n > opts.max_samples)
        throw std::invalid_argument("requested sample count exceeds the refinement budget");

    const double clearance = opts.clearance_factor * loop_diameter(loop);
    for (const EPLocation& ep : eps) {
        for (const ParamPoint& p : loop.samples) {
            if (distance(p, ep.point) <= clearance)
                throw ClearanceViolation(
                    "loop sample within clearance of an EP; enlarge the loop-EP distance");
        }
    }

    while (static_cast<int>(loop.samples.size()) - 1 < n)
        loop = subdivide(loop);

    for (;;) {
        const std::size_t m = loop.samples.size();
        std::vector<std::complex<double>> disc(m);
        for (std::size_t i = 0; i < m; ++i) {
            disc[i] = discriminant(model, loop.samples[i]);
            if (disc[i] == std::complex<double>(0.0, 0.0))
                throw ClearanceViolation("loop sample lies exactly on an EP");
        }

        double max_step = 0.0;
        double d_arg = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) {
            const double step = std::arg(disc[i + 1] / disc[i]);
            max_step = std::max(max_step, std::abs(step));
            d_arg += step;
        }

        if (max_step >= opts.arg_step_limit) {
            if (static_cast<int>(m) - 1 >= opts.max_samples)
                throw UnresolvedBranching(
                    "discriminant argument cannot be unwound at maximum refinement");
            loop = subdivide(loop);
            continue;
        }

        BranchTrace trace;
        trace.samples_used = static_cast<int>(m) - 1;
        trace.d_arg = d_arg;
        trace.disc = std::move(disc);
        trace.t.resize(m);
        trace.branch_plus.resize(m);
        trace.branch_minus.resize(m);

        auto ev0 = eigenvalues(model, loop.samples[0]);
        trace.branch_plus[0] = ev0.first;
        trace.branch_minus[0] = ev0.second;
        trace.t[0] = 0.0;
        for (std::size_t i = 1; i < m; ++i) {
            trace.t[i] = static_cast<double>(i) / static_cast<double>(m - 1);
            const auto ev = eigenvalues(model, loop.samples[i]);
            const std::complex<double> prev_p = trace.branch_plus[i - 1];
            const std::complex<double> prev_m = trace.branch_minus[i - 1];
            const double keep = std::abs(ev.first - prev_p) + std::abs(ev.second - prev_m);
            const double swap = std::abs(ev.second - prev_p) + std::abs(ev.first - prev_m);
            if (keep <= swap) {
                trace.branch_plus[i] = ev.first;
                trace.branch_minus[i] = ev.second;
            } else {
                trace.branch_plus[i] = ev.second;
                trace.branch_minus[i] = ev.first;
            }
        }

        // The endpoint pair equals the start pair; the permutation is a
        // swap when the continued + branch lands on the - start.
        const std::complex<double> end_p = trace.branch_plus.back();
        trace.swapped = std::abs(end_p - trace.branch_minus.front()) <
                        std::abs(end_p - trace.branch_plus.front());
        return trace;
    }
}

struct Vorticity {
    double raw = 0.0;        // -d_arg / (4*pi), CW-positive
    HalfInt nearest{};       // nearest half-integer
    double residual = 0.0;   // |raw - nearest|
};

// Half-integer quantization of the spectral vorticity. A residual above
// the bound signals under-sampling (or an open path) and is rejected.
inline Vorticity numerical_vorticity(const BranchTrace& trace, double residual_bound = 1e-3)
{
    Vorticity v;
    v.raw = -trace.d_arg / (4.0 * std::numbers::pi);
    v.nearest = HalfInt{std::llround(2.0 * v.raw)};
    v.residual = std::abs(v.raw - v.nearest.value());
    if (v.residual >= residual_bound)
        throw NonQuantized("spectral vorticity is not quantized to a half-integer");
    return v;
}

}  // namespace eptopo
