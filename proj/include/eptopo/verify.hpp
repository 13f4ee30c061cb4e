#pragma once

// Certificate battery behind the verify command: each certificate is a
// named pass/fail with its measured margins, and the whole battery is
// deterministic for a fixed seed.

#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "eptopo/cover.hpp"
#include "eptopo/cut_word.hpp"
#include "eptopo/dihedral.hpp"
#include "eptopo/ep_finder.hpp"
#include "eptopo/homotopy.hpp"
#include "eptopo/json_io.hpp"
#include "eptopo/loop.hpp"
#include "eptopo/model.hpp"
#include "eptopo/sphere.hpp"
#include "eptopo/table.hpp"
#include "eptopo/trace.hpp"
#include "eptopo/word.hpp"

namespace eptopo {

struct Certificate {
    std::string name;
    bool pass = false;
    json details;
};

namespace detail {

inline Word random_word_det(std::mt19937_64& rng, int max_len)
{
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<int> gen(0, 1);
    std::uniform_int_distribution<int> sign(0, 1);
    Word w;
    const int n = len(rng);
    for (int i = 0; i < n; ++i)
        w.letters.push_back({gen(rng), sign(rng) ? +1 : -1});
    return w;
}

inline Word random_even_word_det(std::mt19937_64& rng, int max_half)
{
    std::uniform_int_distribution<int> half(0, max_half);
    std::uniform_int_distribution<int> gen(0, 1);
    std::uniform_int_distribution<int> sign(0, 1);
    Word w;
    const int n = 2 * half(rng);
    for (int i = 0; i < n; ++i)
        w.letters.push_back({gen(rng), sign(rng) ? +1 : -1});
    return w;
}

}  // namespace detail

inline Certificate certify_homotopy(int grid_n)
{
    Certificate c{"homotopy_grid", false, json::object()};
    try {
        const HomotopyGrid g = verify_homotopy(grid_n, grid_n);
        const HomotopyGrid g2 = verify_homotopy(2 * grid_n, 2 * grid_n);
        const double stability =
            std::abs(g.min_puncture_distance - g2.min_puncture_distance) /
            g2.min_puncture_distance;
        c.details["nt"] = g.nt;
        c.details["ns"] = g.ns;
        c.details["endpoint_residual_alpha"] = g.endpoint_residual_alpha;
        c.details["endpoint_residual_beta"] = g.endpoint_residual_beta;
        c.details["max_breakpoint_jump"] = g.max_breakpoint_jump;
        c.details["min_puncture_distance"] = g.min_puncture_distance;
        c.details["min_distance_at"] = json::array({g.min_distance_t, g.min_distance_s});
        c.details["min_puncture_distance_refined"] = g2.min_puncture_distance;
        c.details["refinement_stability"] = stability;
        c.pass = g.endpoint_residual_alpha < 1e-12 && g.endpoint_residual_beta < 1e-12 &&
                 g.max_breakpoint_jump < 1e-9 && g.min_puncture_distance > 0.0 &&
                 stability <= 0.05;
    } catch (const std::exception& e) {
        c.details["error"] = std::string(e.what());
    }
    return c;
}

inline Certificate certify_sphere(std::uint64_t seed, int n_points)
{
    Certificate c{"sphere_roundtrip", false, json::object()};
    std::mt19937_64 rng{seed ^ 0x5f3759dfULL};
    std::uniform_real_distribution<double> coord(-10.0, 10.0);
    double max_residual = 0.0;
    for (int i = 0; i < n_points; ++i) {
        const PlanePoint q{coord(rng), coord(rng)};
        const SpherePoint s = unproject(q);
        max_residual = std::max(max_residual, sphere_norm_residual(s));
        const auto back = project(s);
        if (back.is_infinity) {
            max_residual = 1.0;
            break;
        }
        max_residual = std::max({max_residual, std::abs(back.point.n - q.n),
                                 std::abs(back.point.chi - q.chi)});
    }

    // published microcavity EP coordinates, plane -> sphere
    const PlanePoint plane[2] = {{2.6257, 0.6001}, {2.9036, 0.5372}};
    const SpherePoint sphere[2] = {{0.636, 0.145, 0.758}, {0.598, 0.111, 0.795}};
    double max_published_delta = 0.0;
    for (int i = 0; i < 2; ++i) {
        const SpherePoint u = unproject(plane[i]);
        max_published_delta = std::max({max_published_delta, std::abs(u.n - sphere[i].n),
                                        std::abs(u.chi - sphere[i].chi),
                                        std::abs(u.xi - sphere[i].xi)});
    }

    c.details["points"] = n_points;
    c.details["max_roundtrip_residual"] = max_residual;
    c.details["max_published_delta"] = max_published_delta;
    c.pass = max_residual < 1e-12 && max_published_delta <= 1e-3;
    return c;
}

inline Certificate certify_rewrite(std::uint64_t seed, int n_words)
{
    Certificate c{"cover_rewrite_roundtrip", false, json::object()};
    std::mt19937_64 rng{seed ^ 0xc0ffeeULL};
    int failures = 0;
    for (int i = 0; i < n_words; ++i) {
        const Word w = detail::random_even_word_det(rng, 10);
        if (expand_cover_word(rewrite_over_cover_generators(w)) != reduce_free(w))
            ++failures;
    }
    const bool anchor =
        format_cover_word(rewrite_over_cover_generators(parse_word("ba"))) == "B C^-1 A";
    const CoveringSpec cover = standard_two_sheet({0.0, -1.0}, {0.0, 1.0});
    const bool order_ok = lift_word(cover, parse_word("a"), 0).order_to_close == 2 &&
                          lift_word(cover, parse_word("b"), 0).order_to_close == 2;
    c.details["words"] = n_words;
    c.details["failures"] = failures;
    c.details["ba_rewrites_to_B_Cinv_A"] = anchor;
    c.details["single_generator_lift_order"] = 2;
    c.pass = failures == 0 && anchor && order_ok;
    return c;
}

inline Certificate certify_capped_mirror(std::uint64_t seed, int n_words)
{
    Certificate c{"capped_mirror_triviality", false, json::object()};
    std::mt19937_64 rng{seed ^ 0xdeadULL};
    int failures = 0;
    for (int i = 0; i < n_words; ++i) {
        const Word w = detail::random_even_word_det(rng, 10);
        if (!project_dihedral(concat(w, parity(w))).empty())
            ++failures;
    }
    const bool anchors = classify(parse_word("ab")) == ChiralityClass{ChiralityKind::CW, 1} &&
                         classify(parse_word("ba")) == ChiralityClass{ChiralityKind::CCW, 1} &&
                         is_mirror_pair(parse_word("ab"), parse_word("ba")) &&
                         is_mirror_pair(parse_word("ab"), parse_word("Ba"));
    c.details["words"] = n_words;
    c.details["failures"] = failures;
    c.details["anchors"] = anchors;
    c.pass = failures == 0 && anchors;
    return c;
}

inline Certificate certify_cross_validation(std::uint64_t seed, int n_loops)
{
    Certificate c{"spectral_symbolic_cross_validation", false, json::object()};
    const TwoBandModel model = TwoBandModel::square_root({0.0, -1.0}, {0.0, 1.0});
    const auto eps = find_eps(model, {-2.0, 2.0, -2.0, 2.0}, 64, 1e-10);
    if (eps.size() != 2) {
        c.details["error"] = "EP pair not located";
        return c;
    }
    const std::vector<ParamPoint> pts{eps[0].point, eps[1].point};
    const auto rays = default_cut_rays(pts);

    std::mt19937_64 rng{seed ^ 0x100F5ULL};
    int parity_failures = 0;
    int word_mismatches = 0;
    double max_vorticity_delta = 0.0;
    for (int i = 0; i < n_loops; ++i) {
        const Word w = detail::random_word_det(rng, 8);
        const Word reduced = reduce_free(w);
        const Loop loop = word_loop(w, pts, {0.0, 0.0}, 0.35, 192);
        if (loop_word(loop, rays) != reduced)
            ++word_mismatches;
        const BranchTrace tr = trace_loop(model, loop, 256, eps);
        if (tr.swapped != (reduced.size() % 2 == 1))
            ++parity_failures;
        const Vorticity v = numerical_vorticity(tr);
        max_vorticity_delta =
            std::max(max_vorticity_delta,
                     std::abs(v.raw - vorticity_of_word(reduced).value()));
    }
    c.details["loops"] = n_loops;
    c.details["parity_failures"] = parity_failures;
    c.details["word_mismatches"] = word_mismatches;
    c.details["max_vorticity_delta"] = max_vorticity_delta;
    c.pass = parity_failures == 0 && word_mismatches == 0 && max_vorticity_delta < 1e-3;
    return c;
}

inline Certificate certify_table()
{
    Certificate c{"table_binomial_histogram", false, json::object()};
    bool ok = true;
    for (int k = 1; k <= 6; ++k) {
        std::vector<std::uint64_t> histogram(2 * static_cast<std::size_t>(k) + 1, 0);
        const std::uint64_t total = std::uint64_t{1} << (2 * k);
        for (std::uint64_t mask = 0; mask < total; ++mask) {
            int bits = 0;
            for (std::uint64_t m = mask; m; m &= m - 1)
                ++bits;
            ++histogram[static_cast<std::size_t>(bits)];
        }
        const auto rows = enumerate_table(k);
        std::uint64_t sum = 0;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            ok = ok && rows[r].count == histogram[r];
            sum += rows[r].count;
        }
        ok = ok && sum == total;
    }
    c.details["max_k"] = 6;
    c.pass = ok;
    return c;
}

inline std::vector<Certificate> run_certificates(std::uint64_t seed, int homotopy_grid,
                                                 int n_loops, int n_words)
{
    return {
        certify_homotopy(homotopy_grid),
        certify_sphere(seed, n_words),
        certify_rewrite(seed, n_words),
        certify_capped_mirror(seed, n_words),
        certify_cross_validation(seed, n_loops),
        certify_table(),
    };
}

}  // namespace eptopo
