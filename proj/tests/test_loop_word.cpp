#include <catch2/catch_amalgamated.hpp>

#include <complex>
#include <random>

#include "eptopo/cover.hpp"
#include "eptopo/cut_word.hpp"
#include "eptopo/dihedral.hpp"
#include "eptopo/homotopy.hpp"
#include "eptopo/loop.hpp"
#include "eptopo/model.hpp"
#include "eptopo/trace.hpp"
#include "test_util.hpp"

using namespace eptopo;

namespace {

// The canonical pair: generator 0 at (0,-1), generator 1 at (0,+1), cuts
// radially away from the origin.
const std::vector<ParamPoint> kPair{{0.0, -1.0}, {0.0, 1.0}};

std::vector<CutRay> pair_rays() { return default_cut_rays(kPair); }

}  // namespace

TEST_CASE("default cut rays point away from the centroid", "[loopword]")
{
    const auto rays = pair_rays();
    REQUIRE(rays.size() == 2);
    CHECK(rays[0].direction.y == Catch::Approx(-1.0));
    CHECK(rays[1].direction.y == Catch::Approx(1.0));
    CHECK_THROWS_AS(default_cut_rays({}), std::invalid_argument);
}

TEST_CASE("single-EP encirclement gives one letter", "[loopword]")
{
    // CW circle around the lower EP only
    const Word w = loop_word(circle_loop({0.0, -1.0}, 0.4, true, 256, 0.3), pair_rays());
    CHECK(format_word(w) == "a");

    const Word wb = loop_word(circle_loop({0.0, 1.0}, 0.4, true, 256, 0.3), pair_rays());
    CHECK(format_word(wb) == "b");

    const Word wi = loop_word(circle_loop({0.0, -1.0}, 0.4, false, 256, 0.3), pair_rays());
    CHECK(format_word(wi) == "A");
}

TEST_CASE("the basepoint side picks ab versus ba", "[loopword]")
{
    // CW from (3,0): the downward cut is crossed first
    const Word from_right = loop_word(circle_loop({0.0, 0.0}, 3.0, true, 512, 0.0), pair_rays());
    CHECK(format_word(from_right) == "ab");

    // CW from (-3,0): the upward cut comes first
    const Word from_left =
        loop_word(circle_loop({0.0, 0.0}, 3.0, true, 512, 3.14159265358979), pair_rays());
    CHECK(format_word(from_left) == "ba");

    // CCW from (3,0): mirror word
    const Word ccw = loop_word(circle_loop({0.0, 0.0}, 3.0, false, 512, 0.0), pair_rays());
    CHECK(format_word(ccw) == "BA");
}

TEST_CASE("contractible loops give the identity", "[loopword]")
{
    CHECK(loop_word(circle_loop({1.7, 0.3}, 0.3, true, 128), pair_rays()).empty());
    // a loop that pokes across a cut and back cancels after reduction
    const Loop poke = polyline_loop({{0.5, 2.0}, {-0.5, 2.0}, {-0.5, 3.0}, {0.5, 3.0}});
    CHECK(loop_word(poke, pair_rays()).empty());
}

TEST_CASE("word loops realize their words", "[loopword]")
{
    const ParamPoint basepoint{0.0, 0.0};

    const Loop la = word_loop(parse_word("a"), kPair, basepoint, 0.35, 256);
    CHECK(format_word(loop_word(la, pair_rays())) == "a");

    const Loop lab = word_loop(parse_word("ab"), kPair, basepoint, 0.35, 256);
    CHECK(format_word(loop_word(lab, pair_rays())) == "ab");

    // figure eight: CW around one, CCW around the other
    const Loop laB = word_loop(parse_word("aB"), kPair, basepoint, 0.35, 256);
    CHECK(format_word(loop_word(laB, pair_rays())) == "aB");

    const Loop le = word_loop(Word{}, kPair, basepoint, 0.35, 256);
    CHECK(loop_word(le, pair_rays()).empty());
}

TEST_CASE("random word loops round-trip through the cut walk", "[loopword][property]")
{
    auto rng = eptopo::testutil::make_rng(51);
    for (int i = 0; i < 60; ++i) {
        const Word w = eptopo::testutil::random_word(rng, 8);
        const Loop loop = word_loop(w, kPair, {0.0, 0.0}, 0.35, 192);
        CHECK(loop_word(loop, pair_rays()) == reduce_free(w));
    }
}

TEST_CASE("samples exactly on a cut are resolved by their neighbors", "[loopword]")
{
    // vertex on the ray with neighbors on opposite sides: one transversal
    // crossing, counted once
    const Loop through = polyline_loop({{1.0, 0.0}, {0.0, 2.0}, {-1.0, 0.0}});
    CHECK(format_word(loop_word(through, pair_rays())) == "B");

    // vertex on the ray with both neighbors on the same side: a tangent
    // touch, which does not change the class
    const Loop touch = polyline_loop({{1.0, 2.0}, {0.0, 2.0}, {1.0, 3.0}});
    CHECK(loop_word(touch, pair_rays()).empty());
}

TEST_CASE("degenerate crossings are rejected", "[loopword]")
{
    SECTION("basepoint on a cut")
    {
        const Loop bad = circle_loop({0.0, 0.0}, 3.0, true, 512, 1.5707963267948966);
        CHECK_THROWS_AS(loop_word(bad, pair_rays()), AmbiguousBasepoint);
    }

    SECTION("crossing through the EP itself")
    {
        const Loop hit = polyline_loop({{-1.0, 1.0}, {1.0, 1.0}, {0.0, 3.0}});
        CHECK_THROWS_AS(loop_word(hit, pair_rays()), TangentCrossing);
    }
}

TEST_CASE("the prototype loops alpha and beta share the word ab", "[loopword][integration]")
{
    // EPs at -1 and +1; the default cuts run along the real axis away
    // from the origin, and both prototype loops hit them at exactly
    // sampled points ((-4,0) and (4,0) for beta), exercising the
    // on-the-cut sample resolution on real curves.
    const std::vector<ParamPoint> eps{{-1.0, 0.0}, {1.0, 0.0}};
    const auto rays = default_cut_rays(eps);

    auto sample_curve = [](auto&& f) {
        Loop loop;
        const int n = 1024;
        for (int i = 0; i <= n; ++i)
            loop.samples.push_back(from_complex(f(static_cast<double>(i) / n)));
        loop.samples.back() = loop.samples.front();
        return loop;
    };
    const Loop alpha = sample_curve([](double t) { return supplement_alpha(t); });
    const Loop beta = sample_curve([](double t) { return supplement_beta(t); });

    CHECK(format_word(loop_word(alpha, rays)) == "ab");
    CHECK(format_word(loop_word(beta, rays)) == "ab");

    // homotopic loops carry identical spectral data
    const TwoBandModel m = TwoBandModel::square_root({-1.0, 0.0}, {1.0, 0.0});
    const auto located = find_eps(m, {-5.0, 5.0, -5.0, 5.0}, 64, 1e-10);
    REQUIRE(located.size() == 2);
    const BranchTrace ta = trace_loop(m, alpha, 1024, located);
    const BranchTrace tb = trace_loop(m, beta, 1024, located);
    CHECK_FALSE(ta.swapped);
    CHECK_FALSE(tb.swapped);
    CHECK(ta.d_arg == Catch::Approx(-4.0 * 3.14159265358979).margin(1e-6));
    CHECK(tb.d_arg == Catch::Approx(ta.d_arg).margin(1e-6));
    CHECK(numerical_vorticity(ta).nearest == HalfInt{2});
    CHECK(numerical_vorticity(tb).nearest == HalfInt{2});
}

TEST_CASE("spectral cross-validation on word loops", "[loopword][integration]")
{
    // permutation parity == word length parity, and numerical vorticity
    // == word vorticity, on the square-root model
    const TwoBandModel sq =
        TwoBandModel::square_root({0.0, -1.0}, {0.0, 1.0});
    const auto eps = find_eps(sq, {-2.0, 2.0, -2.0, 2.0}, 64, 1e-10);
    REQUIRE(eps.size() == 2);
    std::vector<ParamPoint> pts{eps[0].point, eps[1].point};

    auto rng = eptopo::testutil::make_rng(52);
    for (int i = 0; i < 25; ++i) {
        const Word w = eptopo::testutil::random_word(rng, 6);
        const Word reduced = reduce_free(w);
        const Loop loop = word_loop(w, pts, {0.0, 0.0}, 0.35, 192);

        const Word traced = loop_word(loop, default_cut_rays(pts));
        CHECK(traced == reduced);

        const BranchTrace tr = trace_loop(sq, loop, 256, eps);
        CHECK(tr.swapped == (reduced.size() % 2 == 1));
        const Vorticity v = numerical_vorticity(tr);
        CHECK(v.nearest == HalfInt{vorticity_of_word(reduced).twice});
        CHECK(v.residual < 1e-3);

        // closure on the double cover <=> even word <=> identity monodromy
        const CoveringSpec cover = standard_two_sheet({0.0, -1.0}, {0.0, 1.0});
        CHECK(lift_word(cover, reduced, 0).closes == !tr.swapped);
        CHECK(is_in_cover_subgroup(reduced) == !tr.swapped);
    }
}
