#pragma once

// Covering-space machinery: sheet permutations attached to branch
// points, loop lifting via the cut-crossing automaton, and Schreier
// rewriting of even words over the index-2 subgroup generators
// {A = a^2, B = b^2, C = ab}.

#include <complex>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "eptopo/geometry.hpp"
#include "eptopo/word.hpp"

namespace eptopo {

// One-line image array: perm[i] is where sheet i goes.
using Permutation = std::vector<int>;

inline bool is_permutation(const Permutation& p)
{
    std::vector<bool> seen(p.size(), false);
    for (int v : p) {
        if (v < 0 || v >= static_cast<int>(p.size()) || seen[static_cast<std::size_t>(v)])
            return false;
        seen[static_cast<std::size_t>(v)] = true;
    }
    return true;
}

inline Permutation identity_permutation(int n)
{
    Permutation p(static_cast<std::size_t>(n));
    std::iota(p.begin(), p.end(), 0);
    return p;
}

inline Permutation inverse_permutation(const Permutation& p)
{
    Permutation inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        inv[static_cast<std::size_t>(p[i])] = static_cast<int>(i);
    return inv;
}

// (q after p): first apply p, then q.
inline Permutation compose(const Permutation& q, const Permutation& p)
{
    if (q.size() != p.size())
        throw std::invalid_argument("permutation size mismatch");
    Permutation out(p.size());
    for (std::size_t i = 0; i < p.size(); ++i)
        out[i] = q[static_cast<std::size_t>(p[i])];
    return out;
}

struct BranchPoint {
    std::complex<double> position;
    Vec2 cut_direction{1.0, 0.0};  // unit vector; the cut is the ray position + r*dir
    Permutation deck;
};

struct CoveringSpec {
    int sheets = 2;
    std::vector<BranchPoint> branch_points;
};

inline void validate_cover(const CoveringSpec& cover)
{
    if (cover.sheets < 2)
        throw std::invalid_argument("a covering needs at least 2 sheets");
    for (const BranchPoint& bp : cover.branch_points) {
        if (static_cast<int>(bp.deck.size()) != cover.sheets || !is_permutation(bp.deck))
            throw std::invalid_argument("deck permutation is not a permutation of the sheets");
        const double n = norm(bp.cut_direction);
        if (!(n > 0.0))
            throw std::invalid_argument("cut direction must be a nonzero vector");
    }
}

// The square-root double cover: two sheets, every deck permutation the
// transposition (0 1), cut rays pointing radially away from the midpoint
// of the pair.
inline CoveringSpec standard_two_sheet(std::complex<double> ep1, std::complex<double> ep2)
{
    if (ep1 == ep2)
        throw std::invalid_argument("branch points must be distinct");
    const std::complex<double> mid = 0.5 * (ep1 + ep2);
    auto ray = [&](std::complex<double> ep) -> Vec2 {
        const Vec2 d = from_complex(ep - mid);
        return norm(d) > 0.0 ? normalized(d) : Vec2{1.0, 0.0};
    };
    CoveringSpec cover;
    cover.sheets = 2;
    cover.branch_points = {
        {ep1, ray(ep1), {1, 0}},
        {ep2, ray(ep2), {1, 0}},
    };
    return cover;
}

struct IndexOutOfRange : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

struct LiftResult {
    Permutation total_perm;
    bool closes = false;
    int order_to_close = 1;  // smallest power of the loop whose lift closes
};

// Compose deck permutations left to right along the word: the first
// letter acts first. order_to_close is the length of the start sheet's
// cycle under the total permutation.
inline LiftResult lift_word(const CoveringSpec& cover, const Word& w, int start_sheet)
{
    validate_cover(cover);
    if (start_sheet < 0 || start_sheet >= cover.sheets)
        throw IndexOutOfRange("start sheet out of range");

    Permutation total = identity_permutation(cover.sheets);
    for (const Letter& l : w.letters) {
        validate_letter(l);
        if (l.generator >= static_cast<int>(cover.branch_points.size()))
            throw IndexOutOfRange("word uses a generator with no branch point");
        const Permutation& deck = cover.branch_points[static_cast<std::size_t>(l.generator)].deck;
        total = compose(l.exponent > 0 ? deck : inverse_permutation(deck), total);
    }

    LiftResult res;
    res.total_perm = total;
    res.closes = total[static_cast<std::size_t>(start_sheet)] == start_sheet;
    int sheet = start_sheet;
    int order = 0;
    do {
        sheet = total[static_cast<std::size_t>(sheet)];
        ++order;
    } while (sheet != start_sheet);
    res.order_to_close = order;
    return res;
}

// Membership in the image of the two-sheet cover's loop group: the lift
// closes exactly when the reduced length is even.
inline bool is_in_cover_subgroup(const Word& w)
{
    for (const Letter& l : w.letters)
        if (l.generator > 1)
            throw std::invalid_argument("cover subgroup test is for two-generator words");
    return reduce_free(w).size() % 2 == 0;
}

// Free generators of the even-word subgroup.
enum class CoverGen { A2, B2, AB };  // A = a^2, B = b^2, C = ab

struct CoverLetter {
    CoverGen gen = CoverGen::A2;
    int exponent = +1;

    friend bool operator==(const CoverLetter&, const CoverLetter&) = default;
};

using CoverWord = std::vector<CoverLetter>;

struct NotInSubgroup : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

namespace detail {

inline void push_reduced(CoverWord& out, CoverLetter l)
{
    if (!out.empty() && out.back().gen == l.gen && out.back().exponent == -l.exponent)
        out.pop_back();
    else
        out.push_back(l);
}

}  // namespace detail

// Schreier rewriting with coset transversal {e, a}. Scanning the word
// tracks the current coset; each letter emits the Schreier generator of
// its edge. The Schreier generator b a^-1 is post-substituted as B C^-1,
// which folds the output into the {A, B, C} alphabet:
//
//   state 0, a  -> e            state 1, a  -> A
//   state 0, b  -> B C^-1       state 1, b  -> C
//   state 0, A  -> A^-1         state 1, A  -> e
//   state 0, B  -> C^-1         state 1, B  -> C B^-1
inline CoverWord rewrite_over_cover_generators(const Word& w)
{
    if (!is_in_cover_subgroup(w))
        throw NotInSubgroup("word is not in the even-length subgroup");

    CoverWord out;
    int state = 0;
    for (const Letter& l : w.letters) {
        if (l.generator == 0) {
            if (l.exponent > 0) {
                if (state == 1)
                    detail::push_reduced(out, {CoverGen::A2, +1});
            } else {
                if (state == 0)
                    detail::push_reduced(out, {CoverGen::A2, -1});
            }
        } else {
            if (l.exponent > 0) {
                if (state == 0) {
                    detail::push_reduced(out, {CoverGen::B2, +1});
                    detail::push_reduced(out, {CoverGen::AB, -1});
                } else {
                    detail::push_reduced(out, {CoverGen::AB, +1});
                }
            } else {
                if (state == 0) {
                    detail::push_reduced(out, {CoverGen::AB, -1});
                } else {
                    detail::push_reduced(out, {CoverGen::AB, +1});
                    detail::push_reduced(out, {CoverGen::B2, -1});
                }
            }
        }
        state ^= 1;
    }
    return out;
}

// Substitute A -> aa, B -> bb, C -> ab and freely reduce; rewriting
// round-trips through this back to reduce_free of the input.
inline Word expand_cover_word(const CoverWord& cw)
{
    Word w;
    for (const CoverLetter& cl : cw) {
        Word piece;
        switch (cl.gen) {
            case CoverGen::A2: piece = parse_word("aa"); break;
            case CoverGen::B2: piece = parse_word("bb"); break;
            case CoverGen::AB: piece = parse_word("ab"); break;
        }
        if (cl.exponent < 0)
            piece = parity(piece);
        w = concat(w, piece);
    }
    return reduce_free(w);
}

inline std::string format_cover_word(const CoverWord& cw)
{
    std::string s;
    for (const CoverLetter& cl : cw) {
        if (!s.empty())
            s += ' ';
        switch (cl.gen) {
            case CoverGen::A2: s += 'A'; break;
            case CoverGen::B2: s += 'B'; break;
            case CoverGen::AB: s += 'C'; break;
        }
        if (cl.exponent < 0)
            s += "^-1";
    }
    return s;
}

}  // namespace eptopo
