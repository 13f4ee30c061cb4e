#pragma once

// Loop words in the free group F2 = <a,b>.
//
// A letter is a generator index with exponent +1 or -1; powers are spelled
// out as letter runs, so free reduction is a purely local adjacency rule.
// Generator 0 is `a`, generator 1 is `b`; indices >= 2 are legal and are
// used for covers with more than two branch points.
//
// Text format (shared with the CLI, bit-exact): `a`, `b` for the
// generators, `A`, `B` for their inverses, concatenated without
// separators. The empty string is the identity. Anything else is
// rejected. Words with generator indices >= 2 have no text form.

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace eptopo {

struct Letter {
    int generator = 0;
    int exponent = +1;

    friend bool operator==(const Letter&, const Letter&) = default;
};

struct Word {
    std::vector<Letter> letters;

    Word() = default;
    explicit Word(std::vector<Letter> ls) : letters(std::move(ls)) {}

    std::size_t size() const { return letters.size(); }
    bool empty() const { return letters.empty(); }

    friend bool operator==(const Word&, const Word&) = default;
};

inline Letter inverse(Letter l) { return {l.generator, -l.exponent}; }

inline void validate_letter(const Letter& l)
{
    if (l.exponent != 1 && l.exponent != -1)
        throw std::invalid_argument("letter exponent must be +1 or -1");
    if (l.generator < 0)
        throw std::invalid_argument("letter generator index must be nonnegative");
}

// Unique freely reduced form: no adjacent x x^-1 pair survives.
inline Word reduce_free(const Word& w)
{
    std::vector<Letter> out;
    out.reserve(w.size());
    for (const Letter& l : w.letters) {
        validate_letter(l);
        if (!out.empty() && out.back().generator == l.generator &&
            out.back().exponent == -l.exponent) {
            out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return Word{std::move(out)};
}

inline bool is_freely_reduced(const Word& w)
{
    for (std::size_t i = 1; i < w.size(); ++i) {
        if (w.letters[i].generator == w.letters[i - 1].generator &&
            w.letters[i].exponent == -w.letters[i - 1].exponent)
            return false;
    }
    return true;
}

inline Word concat(const Word& u, const Word& v)
{
    Word w;
    w.letters.reserve(u.size() + v.size());
    w.letters.insert(w.letters.end(), u.letters.begin(), u.letters.end());
    w.letters.insert(w.letters.end(), v.letters.begin(), v.letters.end());
    return w;
}

// Group inverse (the parity image of a loop class): reversed order,
// negated exponents. Orientation reversal at the word level.
inline Word parity(const Word& w)
{
    Word out;
    out.letters.reserve(w.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        out.letters.push_back(inverse(*it));
    return out;
}

// Word equality is equality of freely reduced forms.
inline bool words_equal(const Word& u, const Word& v)
{
    return reduce_free(u) == reduce_free(v);
}

inline Word parse_word(std::string_view text)
{
    Word w;
    w.letters.reserve(text.size());
    for (char c : text) {
        switch (c) {
            case 'a': w.letters.push_back({0, +1}); break;
            case 'A': w.letters.push_back({0, -1}); break;
            case 'b': w.letters.push_back({1, +1}); break;
            case 'B': w.letters.push_back({1, -1}); break;
            default:
                throw std::invalid_argument(
                    std::string("invalid character in word: '") + c + "'");
        }
    }
    return w;
}

inline std::string format_word(const Word& w)
{
    std::string s;
    s.reserve(w.size());
    for (const Letter& l : w.letters) {
        if (l.generator > 1)
            throw std::invalid_argument("word text format covers generators a, b only");
        const bool inv = l.exponent < 0;
        if (l.generator == 0)
            s += inv ? 'A' : 'a';
        else
            s += inv ? 'B' : 'b';
    }
    return s;
}

// Exact half-integer: value = twice/2. Vorticities are integers for
// even-length standard words and half-integers otherwise.
struct HalfInt {
    long long twice = 0;

    double value() const { return static_cast<double>(twice) / 2.0; }
    bool is_integer() const { return twice % 2 == 0; }

    friend bool operator==(const HalfInt&, const HalfInt&) = default;
};

inline std::string to_string(HalfInt h)
{
    if (h.is_integer())
        return std::to_string(h.twice / 2);
    return std::to_string(h.twice) + "/2";
}

// nu(w) = (sum of letter exponents) / 2. Invariant under free reduction,
// so the input need not be reduced.
inline HalfInt vorticity_of_word(const Word& w)
{
    long long sum = 0;
    for (const Letter& l : w.letters) {
        validate_letter(l);
        sum += l.exponent;
    }
    return HalfInt{sum};
}

// Standard CW form of degree k: length 2k, generator pattern a,b,a,b,...
// with arbitrary exponents. Returns k, or 0 if w is not of that shape.
inline int standard_form_degree(const Word& w)
{
    if (w.empty() || w.size() % 2 != 0)
        return 0;
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w.letters[i].generator != static_cast<int>(i % 2))
            return 0;
        if (w.letters[i].exponent != 1 && w.letters[i].exponent != -1)
            return 0;
    }
    return static_cast<int>(w.size() / 2);
}

inline bool is_standard_form(const Word& w) { return standard_form_degree(w) > 0; }

// Number of inverted letters (the EP-crossing count r of the word table).
inline int count_inverted(const Word& w)
{
    int r = 0;
    for (const Letter& l : w.letters)
        if (l.exponent < 0)
            ++r;
    return r;
}

struct NonStandardWord : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

// Lk = k + r, defined only on the standard family.
inline long long linking_number(const Word& w)
{
    const int k = standard_form_degree(w);
    if (k == 0)
        throw NonStandardWord("linking number is defined only for standard-form words");
    return static_cast<long long>(k) + count_inverted(w);
}

}  // namespace eptopo
