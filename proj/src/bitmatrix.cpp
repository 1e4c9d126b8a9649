#include "bect/bitmatrix.hpp"

#include <algorithm>
#include <bit>

#include "bect/errors.hpp"

namespace bect {

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), wpr_(cols == 0 ? 1 : (cols + 63) / 64), data_(rows * wpr_, 0) {}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst) {
    std::uint64_t* d = data_.data() + dst * wpr_;
    const std::uint64_t* s = data_.data() + src * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) d[w] ^= s[w];
}

bool BitMatrix::row_is_zero(std::size_t i) const {
    const std::uint64_t* r = data_.data() + i * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) {
        if (r[w] != 0) return false;
    }
    return true;
}

std::size_t BitMatrix::row_popcount(std::size_t i) const { return popcount_words(row(i)); }

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::uint64_t* ra = data_.data() + a * wpr_;
    std::uint64_t* rb = data_.data() + b * wpr_;
    for (std::size_t w = 0; w < wpr_; ++w) std::swap(ra[w], rb[w]);
}

std::vector<std::uint64_t> BitMatrix::or_of_rows() const {
    std::vector<std::uint64_t> acc(wpr_, 0);
    for (std::size_t i = 0; i < rows_; ++i) {
        const std::uint64_t* r = data_.data() + i * wpr_;
        for (std::size_t w = 0; w < wpr_; ++w) acc[w] |= r[w];
    }
    return acc;
}

std::size_t popcount_words(std::span<const std::uint64_t> words) {
    std::size_t n = 0;
    for (std::uint64_t w : words) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

std::pair<BitMatrix, std::vector<std::size_t>> rref(const BitMatrix& m) {
    BitMatrix a = m;
    std::vector<std::size_t> pivots;
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < a.cols() && next_row < a.rows(); ++col) {
        std::size_t pivot = a.rows();
        for (std::size_t i = next_row; i < a.rows(); ++i) {
            if (a.get(i, col)) {
                pivot = i;
                break;
            }
        }
        if (pivot == a.rows()) continue;
        a.swap_rows(next_row, pivot);
        for (std::size_t i = 0; i < a.rows(); ++i) {
            if (i != next_row && a.get(i, col)) a.xor_row_into(next_row, i);
        }
        pivots.push_back(col);
        ++next_row;
    }
    return {std::move(a), std::move(pivots)};
}

std::size_t rank(const BitMatrix& m) {
    BitMatrix a = m;
    std::size_t r = 0;
    for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
        std::size_t pivot = a.rows();
        for (std::size_t i = r; i < a.rows(); ++i) {
            if (a.get(i, col)) {
                pivot = i;
                break;
            }
        }
        if (pivot == a.rows()) continue;
        a.swap_rows(r, pivot);
        for (std::size_t i = pivot + 1; i < a.rows(); ++i) {
            if (a.get(i, col)) a.xor_row_into(r, i);
        }
        ++r;
    }
    return r;
}

BitMatrix restrict_columns(const BitMatrix& m, std::span<const std::size_t> keep) {
    for (std::size_t j : keep) {
        if (j >= m.cols()) {
            throw InputError("restrict_columns: index " + std::to_string(j) + " >= cols " +
                             std::to_string(m.cols()));
        }
    }
    BitMatrix out(m.rows(), keep.size());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t c = 0; c < keep.size(); ++c) {
            if (m.get(i, keep[c])) out.set(i, c, true);
        }
    }
    return out;
}

BitMatrix null_space(const BitMatrix& m) {
    const std::size_t k = m.rows();
    // Eliminate on [m | I]; rows whose m-part vanishes give the basis.
    BitMatrix work = m;
    BitMatrix track = BitMatrix::identity(k);
    std::size_t next_row = 0;
    for (std::size_t col = 0; col < work.cols() && next_row < k; ++col) {
        std::size_t pivot = k;
        for (std::size_t i = next_row; i < k; ++i) {
            if (work.get(i, col)) {
                pivot = i;
                break;
            }
        }
        if (pivot == k) continue;
        work.swap_rows(next_row, pivot);
        track.swap_rows(next_row, pivot);
        for (std::size_t i = 0; i < k; ++i) {
            if (i != next_row && work.get(i, col)) {
                work.xor_row_into(next_row, i);
                track.xor_row_into(next_row, i);
            }
        }
        ++next_row;
    }
    BitMatrix basis(k - next_row, k);
    for (std::size_t i = next_row; i < k; ++i) {
        for (std::size_t w = 0; w < track.words_per_row(); ++w) {
            basis.row(i - next_row)[w] = track.row(i)[w];
        }
    }
    return basis;
}

BitMatrix transpose(const BitMatrix& m) {
    BitMatrix out(m.cols(), m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (m.get(i, j)) out.set(j, i, true);
        }
    }
    return out;
}

BitMatrix matmul(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.rows()) throw InputError("matmul: inner dimensions differ");
    BitMatrix out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (a.get(i, j)) {
                auto src = b.row(j);
                for (std::size_t w = 0; w < src.size(); ++w) dst[w] ^= src[w];
            }
        }
    }
    return out;
}

}  // namespace bect
