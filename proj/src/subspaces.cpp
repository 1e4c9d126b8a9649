#include "bect/subspaces.hpp"

#include <algorithm>

#include "bect/errors.hpp"

namespace bect {

Int gaussian_binomial(std::size_t k, std::size_t r) {
    if (r > k) throw InputError("gaussian_binomial: r > k");
    // prod_{i=1..r} (2^(k-i+1) - 1)/(2^i - 1); every partial product is itself
    // a Gaussian binomial, so the divisions are exact.
    Int g = 1;
    for (std::size_t i = 1; i <= r; ++i) {
        g *= pow2(k - i + 1) - 1;
        mpz_divexact(g.get_mpz_t(), g.get_mpz_t(), Int(pow2(i) - 1).get_mpz_t());
    }
    return g;
}

SubspaceEnumerator::SubspaceEnumerator(std::size_t k, std::size_t r, const Int& budget)
    : k_(k), r_(r), total_(gaussian_binomial(k, r)) {
    if (total_ > budget) {
        throw ResourceLimitError("subspace enumeration of " + total_.get_str() +
                                 " bases exceeds budget " + budget.get_str());
    }
    if (r_ == 0) {
        // single empty subspace: one 0 x k basis
        pivots_.clear();
        free_counter_ = 0;
        free_count_ = 1;
        return;
    }
    pivots_.resize(r_);
    for (std::size_t i = 0; i < r_; ++i) pivots_[i] = i;
    collect_free_positions();
}

void SubspaceEnumerator::collect_free_positions() {
    free_positions_.clear();
    std::vector<bool> is_pivot(k_, false);
    for (std::size_t p : pivots_) is_pivot[p] = true;
    for (std::size_t i = 0; i < r_; ++i) {
        for (std::size_t j = pivots_[i] + 1; j < k_; ++j) {
            if (!is_pivot[j]) free_positions_.emplace_back(i, j);
        }
    }
    free_counter_ = 0;
    free_count_ = pow2(free_positions_.size());
}

bool SubspaceEnumerator::advance_profile() {
    // next lexicographic combination of pivot columns
    std::size_t i = r_;
    while (i-- > 0) {
        if (pivots_[i] + (r_ - i) < k_) {
            ++pivots_[i];
            for (std::size_t j = i + 1; j < r_; ++j) pivots_[j] = pivots_[j - 1] + 1;
            collect_free_positions();
            return true;
        }
    }
    return false;
}

std::optional<BitMatrix> SubspaceEnumerator::next() {
    if (done_) return std::nullopt;
    if (r_ == 0) {
        done_ = true;
        return BitMatrix(0, k_);
    }
    BitMatrix basis(r_, k_);
    for (std::size_t i = 0; i < r_; ++i) basis.set(i, pivots_[i], true);
    for (std::size_t b = 0; b < free_positions_.size(); ++b) {
        if (mpz_tstbit(free_counter_.get_mpz_t(), b)) {
            basis.set(free_positions_[b].first, free_positions_[b].second, true);
        }
    }
    ++free_counter_;
    if (free_counter_ >= free_count_) {
        if (!advance_profile()) done_ = true;
    }
    return basis;
}

}  // namespace bect
