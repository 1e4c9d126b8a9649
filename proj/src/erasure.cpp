#include "bect/erasure.hpp"

#include <algorithm>
#include <bit>
#include <cstring>

#include "bect/errors.hpp"

#if defined(__BMI2__)
#include <immintrin.h>
#endif

namespace bect {

ErasurePattern ErasurePattern::zeros(std::size_t n) {
    ErasurePattern x;
    x.length = n;
    x.weight = 0;
    x.words.assign(n == 0 ? 1 : (n + 63) / 64, 0);
    return x;
}

ErasurePattern ErasurePattern::ones(std::size_t n) {
    ErasurePattern x = zeros(n);
    for (std::size_t w = 0; w < x.words.size(); ++w) x.words[w] = ~std::uint64_t{0};
    if (n % 64 != 0) x.words.back() = (std::uint64_t{1} << (n % 64)) - 1;
    if (n == 0) x.words[0] = 0;
    x.weight = n;
    return x;
}

ErasurePattern ErasurePattern::from_bits(std::uint64_t bits, std::size_t n) {
    if (n > 64) throw InputError("from_bits: n > 64");
    ErasurePattern x = zeros(n);
    if (n < 64) bits &= (std::uint64_t{1} << n) - 1;
    x.words[0] = bits;
    x.weight = static_cast<std::size_t>(std::popcount(bits));
    return x;
}

void ErasurePattern::set(std::size_t i, bool v) {
    const bool cur = get(i);
    if (cur == v) return;
    words[i / 64] ^= std::uint64_t{1} << (i % 64);
    if (v) {
        ++weight;
    } else {
        --weight;
    }
}

namespace {

inline std::uint64_t splitmix_fin(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ULL;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBULL;
    z ^= z >> 31;
    return z;
}

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

}  // namespace

TrialRng::TrialRng(std::uint64_t seed, std::uint64_t trial)
    : state_(splitmix_fin(seed + kGamma) + trial) {}

std::uint64_t TrialRng::next_u64() {
    state_ += kGamma;
    return splitmix_fin(state_);
}

double TrialRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

ErasurePattern sample_pattern(std::size_t n, double p, std::uint64_t seed, std::uint64_t trial) {
    if (p < 0.0 || p > 1.0) throw InputError("sample_pattern: p outside [0, 1]");
    ErasurePattern x = ErasurePattern::zeros(n);
    TrialRng rng(seed, trial);
    std::size_t weight = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.next_unit() < p) {
            x.words[i / 64] |= std::uint64_t{1} << (i % 64);
            ++weight;
        }
    }
    x.weight = weight;
    return x;
}

CoveredSubcode covered_subcode(const LinearCode& code, const ErasurePattern& x) {
    if (x.length != code.block_length()) {
        throw InputError("pattern length " + std::to_string(x.length) + " != N " +
                         std::to_string(code.block_length()));
    }
    std::vector<std::size_t> unerased;
    unerased.reserve(code.block_length());
    for (std::size_t j = 0; j < code.block_length(); ++j) {
        if (!x.get(j)) unerased.push_back(j);
    }
    const BitMatrix restricted = restrict_columns(code.generator(), unerased);
    const BitMatrix combos = null_space(restricted);
    CoveredSubcode out;
    out.dim = combos.rows();
    out.basis = matmul(combos, code.generator());
    const auto supp = out.basis.or_of_rows();
    for (std::size_t j = 0; j < code.block_length(); ++j) {
        if ((supp[j / 64] >> (j % 64)) & 1u) out.support.push_back(j);
    }
    return out;
}

bool bit_recoverable(const LinearCode& code, const ErasurePattern& x, std::size_t i) {
    if (i >= code.block_length()) throw InputError("bit_recoverable: index out of range");
    const CoveredSubcode s = covered_subcode(code, x);
    return !std::binary_search(s.support.begin(), s.support.end(), i);
}

std::size_t h_gr(const LinearCode& code, const ErasurePattern& x, std::size_t r) {
    if (r < 1) throw InputError("h_gr: r >= 1 required");
    CoverSolver solver(code, CoverSolver::Track::support_size);
    const auto out = solver.solve(x.words, x.weight);
    return out.dim == r ? out.support_size : 0;
}

std::size_t nu_gr(const LinearCode& code, std::size_t r, std::size_t exhaustive_budget) {
    const std::size_t n = code.block_length();
    if (n > exhaustive_budget) {
        throw ResourceLimitError("nu_gr: 2^" + std::to_string(n) + " patterns exceed budget 2^" +
                                 std::to_string(exhaustive_budget));
    }
    if (r < 1 || r > code.dimension()) {
        throw InputError("nu_gr: h_{g_r} has no nonzero value for r=" + std::to_string(r));
    }
    CoverSolver solver(code, CoverSolver::Track::support_size);
    std::size_t best = 0;
    std::uint64_t words[1];
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        words[0] = bits;
        const auto out = solver.solve(std::span<const std::uint64_t>(words, 1),
                                      static_cast<std::size_t>(std::popcount(bits)));
        if (out.dim == r && out.support_size != 0) {
            if (best == 0 || out.support_size < best) best = out.support_size;
        }
    }
    if (best == 0) throw InputError("nu_gr: h_{g_r} is identically zero");
    return best;
}

BitMatrix dual_generator(const LinearCode& code) {
    const auto [red, pivots] = rref(code.generator());
    const std::size_t n = code.block_length();
    const std::size_t k = code.dimension();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t p : pivots) is_pivot[p] = true;
    BitMatrix h(n - k, n);
    std::size_t row = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        h.set(row, f, true);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            if (red.get(i, f)) h.set(row, pivots[i], true);
        }
        ++row;
    }
    return h;
}

namespace {

inline std::uint64_t extract_bits(std::uint64_t value, std::uint64_t mask) {
#if defined(__BMI2__)
    return _pext_u64(value, mask);
#else
    std::uint64_t out = 0;
    int pos = 0;
    while (mask) {
        const int b = std::countr_zero(mask);
        out |= ((value >> b) & 1u) << pos;
        ++pos;
        mask &= mask - 1;
    }
    return out;
#endif
}

}  // namespace

CoverSolver::CoverSolver(const LinearCode& code, Track mode, std::vector<std::size_t> cols)
    : n_(code.block_length()), k_(code.dimension()), mode_(mode), cols_(std::move(cols)) {
    if (mode_ == Track::columns && cols_.size() > 64) {
        throw InputError("CoverSolver tracks at most 64 columns");
    }
    for (std::size_t c : cols_) {
        if (c >= n_) throw InputError("CoverSolver: tracked column out of range");
    }
    full_words_ = (n_ + 63) / 64;
    tail_mask_.assign(full_words_, ~std::uint64_t{0});
    if (n_ % 64 != 0) tail_mask_.back() = (std::uint64_t{1} << (n_ % 64)) - 1;

    // support_size needs covered codewords, so it stays on the primal side.
    dual_side_ = (mode_ != Track::support_size) && (n_ - k_ < k_);
    const BitMatrix side = dual_side_ ? dual_generator(code) : code.generator();
    m_rows_ = side.rows();
    side_rows_.assign(m_rows_ * full_words_, 0);
    for (std::size_t i = 0; i < m_rows_; ++i) {
        auto r = side.row(i);
        std::copy(r.begin(), r.end(), side_rows_.begin() + i * full_words_);
    }
    if (!dual_side_ && mode_ == Track::columns) {
        aug_.assign(m_rows_, 0);
        for (std::size_t i = 0; i < m_rows_; ++i) {
            for (std::size_t b = 0; b < cols_.size(); ++b) {
                if (side.get(i, cols_[b])) aug_[i] |= std::uint64_t{1} << b;
            }
        }
    }
    pivot_of_col_.assign(n_ + 64, -1);
    unit_buf_.assign(full_words_, 0);
}

namespace {

struct ElimScratch {
    std::uint64_t* arena;      // m_rows * stride words
    std::int32_t* pivot_of_col;
    std::size_t main_words;
    std::size_t aug_words;
    std::size_t stride;
};

// Reduces row `v` against existing pivots; returns true if it became a new
// pivot (recorded), false if its main part vanished.
inline bool insert_row(ElimScratch& s, std::size_t slot) {
    std::uint64_t* v = s.arena + slot * s.stride;
    std::size_t w = 0;
    while (true) {
        while (w < s.main_words && v[w] == 0) ++w;
        if (w == s.main_words) return false;
        const std::size_t lead =
            w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
        const std::int32_t p = s.pivot_of_col[lead];
        if (p < 0) {
            s.pivot_of_col[lead] = static_cast<std::int32_t>(slot);
            return true;
        }
        const std::uint64_t* pr = s.arena + static_cast<std::size_t>(p) * s.stride;
        for (std::size_t j = w; j < s.main_words; ++j) v[j] ^= pr[j];
        for (std::size_t j = s.main_words; j < s.stride; ++j) v[j] ^= pr[j];
    }
}

// Membership of the row currently in `v` (main part only) in the pivot span.
inline bool reduces_to_zero(ElimScratch& s, std::uint64_t* v) {
    std::size_t w = 0;
    while (true) {
        while (w < s.main_words && v[w] == 0) ++w;
        if (w == s.main_words) return true;
        const std::size_t lead =
            w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
        const std::int32_t p = s.pivot_of_col[lead];
        if (p < 0) return false;
        const std::uint64_t* pr = s.arena + static_cast<std::size_t>(p) * s.stride;
        for (std::size_t j = w; j < s.main_words; ++j) v[j] ^= pr[j];
    }
}

}  // namespace

CoverSolver::Outcome CoverSolver::solve(std::span<const std::uint64_t> pattern,
                                        std::size_t weight) {
    const std::size_t kept_bits = dual_side_ ? weight : n_ - weight;
    const std::size_t main_words = std::max<std::size_t>(1, (kept_bits + 63) / 64);
    const std::size_t aug_words =
        mode_ == Track::support_size ? full_words_ : (mode_ == Track::columns && !dual_side_ ? 1 : 0);
    const std::size_t stride = main_words + aug_words;
    main_buf_.assign(m_rows_ * stride, 0);
    std::fill(pivot_of_col_.begin(), pivot_of_col_.begin() + main_words * 64 + 1, -1);

    ElimScratch scratch{main_buf_.data(), pivot_of_col_.data(), main_words, aug_words, stride};

    std::size_t rank = 0;
    std::size_t zero_rows = 0;
    std::uint64_t tracked = 0;
    std::vector<std::uint64_t> supp_acc;
    if (mode_ == Track::support_size) supp_acc.assign(full_words_, 0);

    for (std::size_t i = 0; i < m_rows_; ++i) {
        const std::uint64_t* src = side_rows_.data() + i * full_words_;
        std::uint64_t* dst = main_buf_.data() + i * stride;
        // compact the row through the pattern mask
        std::size_t off = 0;
        for (std::size_t w = 0; w < full_words_; ++w) {
            const std::uint64_t mask = dual_side_ ? pattern[w] : (~pattern[w] & tail_mask_[w]);
            if (mask == 0) continue;
            const std::uint64_t bits = extract_bits(src[w], mask);
            const std::size_t cnt = static_cast<std::size_t>(std::popcount(mask));
            dst[off / 64] |= bits << (off % 64);
            if (off % 64 != 0 && off % 64 + cnt > 64) dst[off / 64 + 1] |= bits >> (64 - off % 64);
            off += cnt;
        }
        if (mode_ == Track::columns && !dual_side_) {
            dst[main_words] = aug_[i];
        } else if (mode_ == Track::support_size) {
            std::copy(src, src + full_words_, dst + main_words);
        }
        if (insert_row(scratch, i)) {
            ++rank;
        } else {
            ++zero_rows;
            if (mode_ == Track::columns && !dual_side_) {
                tracked |= dst[main_words];
            } else if (mode_ == Track::support_size) {
                for (std::size_t w = 0; w < full_words_; ++w) supp_acc[w] |= dst[main_words + w];
            }
        }
    }

    Outcome out;
    out.dim = dual_side_ ? weight - rank : zero_rows;
    if (mode_ == Track::support_size) {
        out.support_size = popcount_words(supp_acc);
    } else if (mode_ == Track::columns) {
        if (!dual_side_) {
            out.unrecoverable = tracked;
        } else {
            for (std::size_t b = 0; b < cols_.size(); ++b) {
                const std::size_t c = cols_[b];
                if (!((pattern[c / 64] >> (c % 64)) & 1u)) continue;  // unerased: recoverable
                // compacted position of column c within the erased set
                std::size_t pos = 0;
                for (std::size_t w = 0; w < c / 64; ++w) {
                    pos += static_cast<std::size_t>(std::popcount(pattern[w]));
                }
                if (c % 64 != 0) {
                    pos += static_cast<std::size_t>(
                        std::popcount(pattern[c / 64] & ((std::uint64_t{1} << (c % 64)) - 1)));
                }
                std::fill(unit_buf_.begin(), unit_buf_.begin() + main_words, 0);
                unit_buf_[pos / 64] = std::uint64_t{1} << (pos % 64);
                // e_c in rowspan(H|erased) <=> bit c is recoverable
                if (!reduces_to_zero(scratch, unit_buf_.data())) {
                    out.unrecoverable |= std::uint64_t{1} << b;
                }
            }
        }
    }
    return out;
}

bool CoverSolver::dim_at_least(std::span<const std::uint64_t> pattern, std::size_t weight,
                               std::size_t r) {
    if (r == 0) return true;
    if (dual_side_ && weight < r) return false;
    if (!dual_side_ && k_ < r) return false;
    const std::size_t rank_limit = dual_side_ ? weight - r : k_ - r;

    const std::size_t kept_bits = dual_side_ ? weight : n_ - weight;
    const std::size_t main_words = std::max<std::size_t>(1, (kept_bits + 63) / 64);
    main_buf_.assign(m_rows_ * main_words, 0);
    std::fill(pivot_of_col_.begin(), pivot_of_col_.begin() + main_words * 64 + 1, -1);
    ElimScratch scratch{main_buf_.data(), pivot_of_col_.data(), main_words, 0, main_words};

    std::size_t rank = 0;
    for (std::size_t i = 0; i < m_rows_; ++i) {
        const std::uint64_t* src = side_rows_.data() + i * full_words_;
        std::uint64_t* dst = main_buf_.data() + i * main_words;
        std::size_t off = 0;
        for (std::size_t w = 0; w < full_words_; ++w) {
            const std::uint64_t mask = dual_side_ ? pattern[w] : (~pattern[w] & tail_mask_[w]);
            if (mask == 0) continue;
            const std::uint64_t bits = extract_bits(src[w], mask);
            const std::size_t cnt = static_cast<std::size_t>(std::popcount(mask));
            dst[off / 64] |= bits << (off % 64);
            if (off % 64 != 0 && off % 64 + cnt > 64) dst[off / 64 + 1] |= bits >> (64 - off % 64);
            off += cnt;
        }
        if (insert_row(scratch, i)) {
            if (++rank > rank_limit) return false;
        }
    }
    return true;
}

}  // namespace bect
