#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "bect/bitmatrix.hpp"
#include "bect/code.hpp"

namespace bect {

inline constexpr std::size_t kDefaultExhaustiveBudget = 24;  // max N for 2^N scans

// Length-N bit vector, 1 = erased.
struct ErasurePattern {
    std::size_t length = 0;
    std::size_t weight = 0;
    std::vector<std::uint64_t> words;

    static ErasurePattern zeros(std::size_t n);
    static ErasurePattern ones(std::size_t n);
    // low N bits of `bits` (for exhaustive scans, N <= 64)
    static ErasurePattern from_bits(std::uint64_t bits, std::size_t n);

    bool get(std::size_t i) const { return (words[i / 64] >> (i % 64)) & 1u; }
    void set(std::size_t i, bool v);
};

// Counter-based substream: trial t of seed s draws from a splitmix64 stream
// started at state mix(s) + t; coordinate j consumes the j-th value. Distinct
// trials never share counters at the offsets we use, and a pattern depends
// only on (seed, trial), which keeps results independent of thread count.
class TrialRng {
public:
    TrialRng(std::uint64_t seed, std::uint64_t trial);
    std::uint64_t next_u64();
    double next_unit();  // [0, 1), 53 random bits

private:
    std::uint64_t state_;
};

ErasurePattern sample_pattern(std::size_t n, double p, std::uint64_t seed, std::uint64_t trial);

struct CoveredSubcode {
    std::size_t dim = 0;
    BitMatrix basis;                   // dim x N, rows are covered codewords
    std::vector<std::size_t> support;  // sorted coordinates of supp(S_C(x))
};

// S_C(x) via the rank identity dim = k - rank(G restricted to unerased
// columns); basis rows come from the left null space mapped through G.
CoveredSubcode covered_subcode(const LinearCode& code, const ErasurePattern& x);

bool bit_recoverable(const LinearCode& code, const ErasurePattern& x, std::size_t i);

// h for the indicator g_r = [dim S_C(x) >= r]: the number of single-coordinate
// flips that turn g_r off. Equals |supp(S_C(x))| when dim S_C(x) = r, else 0.
std::size_t h_gr(const LinearCode& code, const ErasurePattern& x, std::size_t r);

// Minimal nonzero value of h_{g_r} over all 2^N patterns.
std::size_t nu_gr(const LinearCode& code, std::size_t r,
                  std::size_t exhaustive_budget = kDefaultExhaustiveBudget);

// Generator of the dual code, (N-k) x N (may have zero rows when k = N).
BitMatrix dual_generator(const LinearCode& code);

// Repeated covered-subcode queries against one code. Eliminates on whichever
// of G / dual(G) has fewer rows, over columns compacted to the relevant half
// of the pattern; scratch is reused across calls. Not thread-safe: use one
// solver per worker.
class CoverSolver {
public:
    enum class Track {
        none,          // dim only
        columns,       // membership of <= 64 fixed columns in supp(S_C(x))
        support_size,  // |supp(S_C(x))| (forces the primal side)
    };

    CoverSolver(const LinearCode& code, Track mode, std::vector<std::size_t> cols = {});

    struct Outcome {
        std::size_t dim = 0;
        std::uint64_t unrecoverable = 0;  // Track::columns: bit b <=> cols[b] in supp
        std::size_t support_size = 0;     // Track::support_size
    };

    Outcome solve(std::span<const std::uint64_t> pattern, std::size_t weight);

    // [dim S_C(x) >= r], with early exit; equivalent to solve().dim >= r.
    bool dim_at_least(std::span<const std::uint64_t> pattern, std::size_t weight, std::size_t r);

    std::size_t block_length() const { return n_; }

private:
    std::size_t n_ = 0;
    std::size_t k_ = 0;
    bool dual_side_ = false;
    Track mode_;
    std::vector<std::size_t> cols_;
    std::size_t m_rows_ = 0;                // rows of the side matrix
    std::size_t full_words_ = 0;            // words per N-bit row
    std::vector<std::uint64_t> side_rows_;  // side matrix, row-major
    std::vector<std::uint64_t> aug_;        // per-row tracked-column bits (primal columns mode)
    std::vector<std::uint64_t> tail_mask_;  // ones on valid bit positions

    // scratch
    std::vector<std::uint64_t> main_buf_;
    std::vector<std::uint64_t> aug_buf_;
    std::vector<std::int32_t> pivot_of_col_;
    std::vector<std::uint64_t> unit_buf_;
};

}  // namespace bect
