#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace bect {

// Row-major bit-packed matrix over GF(2). Bits beyond `cols` in the last word
// of every row are kept zero, so whole-word operations are safe.
class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t words_per_row() const { return wpr_; }

    bool get(std::size_t i, std::size_t j) const {
        return (data_[i * wpr_ + j / 64] >> (j % 64)) & 1u;
    }
    void set(std::size_t i, std::size_t j, bool v) {
        const std::uint64_t mask = std::uint64_t{1} << (j % 64);
        if (v) {
            data_[i * wpr_ + j / 64] |= mask;
        } else {
            data_[i * wpr_ + j / 64] &= ~mask;
        }
    }

    std::span<const std::uint64_t> row(std::size_t i) const {
        return {data_.data() + i * wpr_, wpr_};
    }
    std::span<std::uint64_t> row(std::size_t i) {
        return {data_.data() + i * wpr_, wpr_};
    }

    void xor_row_into(std::size_t src, std::size_t dst);
    bool row_is_zero(std::size_t i) const;
    std::size_t row_popcount(std::size_t i) const;
    void swap_rows(std::size_t a, std::size_t b);

    // OR of all rows, as packed words (the support of the row space).
    std::vector<std::uint64_t> or_of_rows() const;

    friend bool operator==(const BitMatrix& a, const BitMatrix& b) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t wpr_ = 0;
    std::vector<std::uint64_t> data_;
};

std::size_t rank(const BitMatrix& m);

// Reduced row-echelon form with the same row space; pivot columns are
// strictly increasing and nonzero rows come first.
std::pair<BitMatrix, std::vector<std::size_t>> rref(const BitMatrix& m);

// Keeps the given columns (all < cols, duplicates rejected), original order.
BitMatrix restrict_columns(const BitMatrix& m, std::span<const std::size_t> keep);

// Basis of the left null space {u : u * m = 0}, one row per basis vector;
// row count equals rows(m) - rank(m).
BitMatrix null_space(const BitMatrix& m);

BitMatrix transpose(const BitMatrix& m);

// a (m x n) * b (n x p) over GF(2).
BitMatrix matmul(const BitMatrix& a, const BitMatrix& b);

std::size_t popcount_words(std::span<const std::uint64_t> words);

}  // namespace bect
