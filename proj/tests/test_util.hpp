#pragma once

// Shared generators for the property-style tests.

#include <random>

#include "eptopo/word.hpp"

namespace eptopo::testutil {

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eed0001ULL)
{
    return std::mt19937_64{seed};
}

inline Word random_word(std::mt19937_64& rng, int max_len, int n_generators = 2)
{
    std::uniform_int_distribution<int> len_dist(0, max_len);
    std::uniform_int_distribution<int> gen_dist(0, n_generators - 1);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    Word w;
    const int len = len_dist(rng);
    w.letters.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i)
        w.letters.push_back({gen_dist(rng), sign_dist(rng) ? +1 : -1});
    return w;
}

inline Word random_even_word(std::mt19937_64& rng, int max_half_len, int n_generators = 2)
{
    std::uniform_int_distribution<int> half_dist(0, max_half_len);
    std::uniform_int_distribution<int> gen_dist(0, n_generators - 1);
    std::uniform_int_distribution<int> sign_dist(0, 1);
    Word w;
    const int len = 2 * half_dist(rng);
    for (int i = 0; i < len; ++i)
        w.letters.push_back({gen_dist(rng), sign_dist(rng) ? +1 : -1});
    return w;
}

}  // namespace eptopo::testutil
