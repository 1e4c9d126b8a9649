#pragma once

// Shared test-only oracles. Everything here is deliberately brute-force and
// independent of the library's computation paths.

#include <bit>
#include <cstdint>
#include <set>
#include <vector>

#include "bect/bitmatrix.hpp"
#include "bect/code.hpp"
#include "bect/erasure.hpp"

namespace testutil {

// Rank by counting the row span: |span| = 2^rank. Rows packed in u64, N <= 64.
inline std::size_t rank_by_span(const std::vector<std::uint64_t>& rows) {
    std::set<std::uint64_t> span;
    const std::size_t k = rows.size();
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << k); ++m) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < k; ++i) {
            if ((m >> i) & 1u) v ^= rows[i];
        }
        span.insert(v);
    }
    std::size_t r = 0;
    while ((std::size_t{1} << r) < span.size()) ++r;
    return r;
}

inline std::vector<std::uint64_t> rows_of(const bect::BitMatrix& m) {
    std::vector<std::uint64_t> rows;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        std::uint64_t v = 0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m.get(i, j)) v |= std::uint64_t{1} << j;
        }
        rows.push_back(v);
    }
    return rows;
}

// All 2^k codewords as packed words, N <= 64.
inline std::vector<std::uint64_t> all_codewords(const bect::LinearCode& code) {
    const auto rows = rows_of(code.generator());
    std::vector<std::uint64_t> words;
    for (std::uint64_t m = 0; m < (std::uint64_t{1} << rows.size()); ++m) {
        std::uint64_t v = 0;
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if ((m >> i) & 1u) v ^= rows[i];
        }
        words.push_back(v);
    }
    return words;
}

struct CoveredOracle {
    std::size_t dim;
    std::uint64_t support;               // OR over covered codewords
    std::vector<std::uint64_t> covered;  // every covered codeword, 0 included
};

// Literal definition: filter all codewords by the cover relation c <= x.
inline CoveredOracle covered_by_filter(const bect::LinearCode& code, std::uint64_t x) {
    CoveredOracle out{0, 0, {}};
    for (std::uint64_t c : all_codewords(code)) {
        if ((c & ~x) == 0) {
            out.covered.push_back(c);
            out.support |= c;
        }
    }
    std::size_t r = 0;
    while ((std::size_t{1} << r) < out.covered.size()) ++r;
    out.dim = r;
    return out;
}

// Literal h_g via the flip definition: count coordinate flips that turn g_r off.
inline std::size_t h_literal(const bect::LinearCode& code, std::uint64_t x, std::size_t r) {
    const std::size_t n = code.block_length();
    if (covered_by_filter(code, x).dim < r) return 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint64_t flipped = x ^ (std::uint64_t{1} << i);
        if (covered_by_filter(code, flipped).dim < r) ++count;
    }
    return count;
}

// A random full-row-rank generator, via rejection.
inline bect::LinearCode random_code(std::size_t k, std::size_t n, std::uint64_t seed) {
    bect::TrialRng rng(seed, 0);
    for (;;) {
        bect::BitMatrix g(k, n);
        for (std::size_t i = 0; i < k; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (rng.next_u64() & 1u) g.set(i, j, true);
            }
        }
        if (bect::rank(g) == k) return bect::LinearCode::from_generator(std::move(g));
    }
}

}  // namespace testutil
