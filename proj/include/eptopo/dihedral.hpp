#pragma once

// Orbifold quotient of the loop group: imposing the cone relations
// a^2 = b^2 = e on F2 gives the infinite dihedral group D_inf. Its
// rotation subgroup is generated by ab and is isomorphic to Z; the
// integer attached to an even element is the capped winding of the loop.
// Odd elements are reflections (single-EP encirclements) and carry no
// integer winding.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "eptopo/word.hpp"

namespace eptopo {

// D_inf normal form: alternating generator indices, no exponents
// (each generator is an involution).
struct DihedralElement {
    std::vector<int> generators;

    std::size_t size() const { return generators.size(); }
    bool empty() const { return generators.empty(); }

    friend bool operator==(const DihedralElement&, const DihedralElement&) = default;
};

// Drop exponents, then cancel adjacent equal generators until none remain.
inline DihedralElement project_dihedral(const Word& w)
{
    std::vector<int> out;
    out.reserve(w.size());
    for (const Letter& l : w.letters) {
        validate_letter(l);
        if (!out.empty() && out.back() == l.generator)
            out.pop_back();
        else
            out.push_back(l.generator);
    }
    return DihedralElement{std::move(out)};
}

// Capped equality: equality in the dihedral quotient.
inline bool capped_equal(const Word& u, const Word& v)
{
    return project_dihedral(u) == project_dihedral(v);
}

inline void require_two_generator(const Word& w)
{
    for (const Letter& l : w.letters)
        if (l.generator > 1)
            throw std::invalid_argument(
                "capped winding is defined for two-generator words only");
}

// Winding of the capped class: 0 for e, +k for (ab)^k, -k for (ba)^k,
// nullopt for reflections (odd dihedral length).
inline std::optional<long long> winding(const Word& w)
{
    require_two_generator(w);
    const DihedralElement d = project_dihedral(w);
    if (d.size() % 2 != 0)
        return std::nullopt;
    if (d.empty())
        return 0;
    const long long k = static_cast<long long>(d.size() / 2);
    return d.generators.front() == 0 ? k : -k;
}

enum class ChiralityKind { Trivial, CW, CCW, Reflection };

struct ChiralityClass {
    ChiralityKind kind = ChiralityKind::Trivial;
    long long k = 0;  // positive for CW/CCW, 0 otherwise

    friend bool operator==(const ChiralityClass&, const ChiralityClass&) = default;
};

inline ChiralityClass classify(const Word& w)
{
    const auto n = winding(w);
    if (!n)
        return {ChiralityKind::Reflection, 0};
    if (*n == 0)
        return {ChiralityKind::Trivial, 0};
    if (*n > 0)
        return {ChiralityKind::CW, *n};
    return {ChiralityKind::CCW, -*n};
}

inline std::string to_string(const ChiralityClass& c)
{
    switch (c.kind) {
        case ChiralityKind::Trivial: return "Trivial";
        case ChiralityKind::CW: return "CW(" + std::to_string(c.k) + ")";
        case ChiralityKind::CCW: return "CCW(" + std::to_string(c.k) + ")";
        case ChiralityKind::Reflection: return "Reflection";
    }
    return "Trivial";
}

// Mirror pair: w0 * w1 = e in the capped fundamental group, i.e. both
// windings are integers and cancel. Two reflections compose to a
// rotation but are not a mirror pair.
inline bool is_mirror_pair(const Word& w0, const Word& w1)
{
    const auto n0 = winding(w0);
    const auto n1 = winding(w1);
    return n0 && n1 && (*n0 + *n1 == 0);
}

// All standard-form words of degree k, in lexicographic text order
// (inverted letters sort before plain ones, as 'A' < 'a'). Materializing
// 4^k words is capped at k = 8.
inline std::vector<Word> standard_form_words(int k)
{
    if (k < 1 || k > 8)
        throw std::invalid_argument("standard form enumeration is limited to k in [1, 8]");
    const std::size_t len = 2 * static_cast<std::size_t>(k);
    std::vector<Word> words;
    words.reserve(std::size_t{1} << len);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
        Word w;
        w.letters.reserve(len);
        for (std::size_t i = 0; i < len; ++i) {
            // Bit 0 of `mask` drives the first letter; bit set = inverted.
            const bool inv = (mask >> i) & 1;
            w.letters.push_back({static_cast<int>(i % 2), inv ? -1 : +1});
        }
        words.push_back(std::move(w));
    }
    // Lexicographic in text format: 'A' < 'B' < 'a' < 'b', left to right.
    std::sort(words.begin(), words.end(), [](const Word& u, const Word& v) {
        return format_word(u) < format_word(v);
    });
    return words;
}

struct ReflectionClassError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// The topological chirality set of w0 within the standard family of
// degree k_form: standard words whose table vorticity equals the negated
// capped winding of w0. (All standard words share capped winding +k, so
// the candidate filter has to be the vorticity observable; the reference
// side uses the capped winding of w0.)
inline std::vector<Word> mirror_set(const Word& w0, int k_form)
{
    const auto n0 = winding(w0);
    if (!n0)
        throw ReflectionClassError("mirror set undefined for reflection-class words");
    if (*n0 == 0)
        throw ReflectionClassError("mirror set undefined for trivial-winding words");
    const HalfInt target{-2 * *n0};
    std::vector<Word> out;
    for (Word& w : standard_form_words(k_form)) {
        if (vorticity_of_word(w) == target)
            out.push_back(std::move(w));
    }
    return out;
}

}  // namespace eptopo
