#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "bect/bigmath.hpp"
#include "bect/bitmatrix.hpp"

namespace bect {

// Number of r-dimensional subspaces of GF(2)^k.
Int gaussian_binomial(std::size_t k, std::size_t r);

inline constexpr double kDefaultSubspaceBudget = 1e8;

// Yields each r-dimensional subspace of GF(2)^k exactly once, as its unique
// reduced row-echelon basis (r x k). Enumeration walks pivot-column profiles
// in lexicographic order and the free entries within each profile as a binary
// counter, so no dedup bookkeeping is needed. Single consumer.
class SubspaceEnumerator {
public:
    // Throws ResourceLimitError (naming the count) if the total number of
    // subspaces exceeds `budget`.
    SubspaceEnumerator(std::size_t k, std::size_t r, const Int& budget);

    std::optional<BitMatrix> next();

    const Int& total() const { return total_; }

private:
    bool advance_profile();
    void collect_free_positions();

    std::size_t k_ = 0;
    std::size_t r_ = 0;
    Int total_;
    bool done_ = false;
    std::vector<std::size_t> pivots_;
    std::vector<std::pair<std::size_t, std::size_t>> free_positions_;
    Int free_counter_;
    Int free_count_;
};

}  // namespace bect
