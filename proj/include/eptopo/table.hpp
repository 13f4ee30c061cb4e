#pragma once

// Reduced-word table for the standard CW family of degree k: inverting
// r of the 2k segments gives C(2k,r) words with linking number k+r and
// vorticity k-r; the histogram over r is the symmetric binomial and the
// total is 2^(2k).

#include <cstdint>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "eptopo/dihedral.hpp"
#include "eptopo/word.hpp"

namespace eptopo {

struct WordTableRow {
    int r = 0;
    std::uint64_t count = 0;
    long long linking = 0;
    long long vorticity = 0;
    std::vector<Word> words;  // populated only when materialized
};

// 4^k words; k = 12 is ~16.7M, the largest desk-scale run we allow.
inline constexpr int kTableMaxK = 12;
// Word listings are cut off here; beyond this only the histogram is exact
// memory-safe territory.
inline constexpr int kTableMaxMaterializeK = 8;

inline std::uint64_t binomial(int n, int r)
{
    if (r < 0 || r > n)
        return 0;
    std::uint64_t acc = 1;
    for (int i = 0; i < r; ++i)
        acc = acc * static_cast<std::uint64_t>(n - i) / static_cast<std::uint64_t>(i + 1);
    return acc;
}

inline std::vector<WordTableRow> enumerate_table(int k, bool materialize = false)
{
    if (k < 1 || k > kTableMaxK)
        throw std::invalid_argument("table degree k must be in [1, 12]");
    if (materialize && k > kTableMaxMaterializeK)
        throw std::invalid_argument("word listings are limited to k <= 8; use histogram mode");

    std::vector<WordTableRow> rows;
    rows.reserve(2 * static_cast<std::size_t>(k) + 1);
    for (int r = 0; r <= 2 * k; ++r) {
        WordTableRow row;
        row.r = r;
        row.count = binomial(2 * k, r);
        row.linking = static_cast<long long>(k) + r;
        row.vorticity = static_cast<long long>(k) - r;
        rows.push_back(std::move(row));
    }
    if (materialize) {
        for (Word& w : standard_form_words(k)) {
            const int r = count_inverted(w);
            rows[static_cast<std::size_t>(r)].words.push_back(std::move(w));
        }
    }
    return rows;
}

inline void write_table_csv(std::ostream& os, const std::vector<WordTableRow>& rows)
{
    os << "r,count,linking,vorticity\n";
    for (const WordTableRow& row : rows)
        os << row.r << ',' << row.count << ',' << row.linking << ','
           << row.vorticity << '\n';
}

inline std::string table_csv(const std::vector<WordTableRow>& rows)
{
    std::ostringstream os;
    write_table_csv(os, rows);
    return os.str();
}

}  // namespace eptopo
