#include "bect/bitmatrix.hpp"

#include <set>

#include "bect/code.hpp"
#include "bect/errors.hpp"
#include "bect/subspaces.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bect;

TEST_CASE("rank basics") {
    CHECK(rank(BitMatrix::identity(4)) == 4);
    CHECK(rank(BitMatrix(3, 5)) == 0);
    const auto rm31 = rm_code({3, 1});
    CHECK(rank(rm31.generator()) == 4);
    CHECK(testutil::rank_by_span(testutil::rows_of(rm31.generator())) == 4);
}

TEST_CASE("rank equals transpose rank and span oracle on random matrices") {
    TrialRng rng(7, 0);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t rows = 1 + rng.next_u64() % 6;
        const std::size_t cols = 1 + rng.next_u64() % 10;
        BitMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (rng.next_u64() & 1u) m.set(i, j, true);
            }
        }
        const std::size_t r = rank(m);
        CHECK(r == rank(transpose(m)));
        CHECK(r == testutil::rank_by_span(testutil::rows_of(m)));
    }
}

TEST_CASE("rref shape and idempotence") {
    const auto [ri, pi] = rref(BitMatrix::identity(5));
    CHECK(ri == BitMatrix::identity(5));
    CHECK(pi == std::vector<std::size_t>{0, 1, 2, 3, 4});

    BitMatrix dup(2, 4);
    for (std::size_t j : {0ul, 2ul}) {
        dup.set(0, j, true);
        dup.set(1, j, true);
    }
    const auto [rd, pd] = rref(dup);
    CHECK(pd.size() == 1);
    CHECK(rd.row_is_zero(1));

    const auto rm31 = rm_code({3, 1});
    const auto [rr, pr] = rref(rm31.generator());
    CHECK(pr.size() == 4);
    for (std::size_t i = 1; i < pr.size(); ++i) CHECK(pr[i - 1] < pr[i]);
    const auto [rr2, pr2] = rref(rr);
    CHECK(rr2 == rr);
    CHECK(pr2 == pr);

    // same row space: every original row reduces to zero against the rref rows
    TrialRng rng(11, 0);
    for (int trial = 0; trial < 30; ++trial) {
        BitMatrix m(3, 8);
        for (std::size_t i = 0; i < 3; ++i) {
            for (std::size_t j = 0; j < 8; ++j) {
                if (rng.next_u64() & 1u) m.set(i, j, true);
            }
        }
        const auto [red, piv] = rref(m);
        const auto span_a = testutil::rank_by_span(testutil::rows_of(m));
        auto both = testutil::rows_of(m);
        for (auto r : testutil::rows_of(red)) both.push_back(r);
        CHECK(testutil::rank_by_span(both) == span_a);  // union has the same span
        CHECK(piv.size() == span_a);
    }
}

TEST_CASE("restrict_columns") {
    const auto rm31 = rm_code({3, 1});
    std::vector<std::size_t> all{0, 1, 2, 3, 4, 5, 6, 7};
    CHECK(restrict_columns(rm31.generator(), all) == rm31.generator());

    const BitMatrix empty = restrict_columns(rm31.generator(), {});
    CHECK(empty.cols() == 0);
    CHECK(rank(empty) == 0);

    std::vector<std::size_t> first4{0, 1, 2, 3};
    const BitMatrix sub = restrict_columns(rm31.generator(), first4);
    CHECK(rank(sub) == 3);
    CHECK(testutil::rank_by_span(testutil::rows_of(sub)) == 3);

    std::vector<std::size_t> bad{0, 9};
    CHECK_THROWS_AS(restrict_columns(rm31.generator(), bad), InputError);
    CHECK(rank(sub) <= rank(rm31.generator()));
}

TEST_CASE("null_space basis") {
    CHECK(null_space(BitMatrix::identity(6)).rows() == 0);
    const BitMatrix z(4, 5);
    const BitMatrix nz = null_space(z);
    CHECK(nz == BitMatrix::identity(4));

    TrialRng rng(13, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t rows = 1 + rng.next_u64() % 6;
        const std::size_t cols = 1 + rng.next_u64() % 8;
        BitMatrix m(rows, cols);
        for (std::size_t i = 0; i < rows; ++i) {
            for (std::size_t j = 0; j < cols; ++j) {
                if (rng.next_u64() & 1u) m.set(i, j, true);
            }
        }
        const BitMatrix basis = null_space(m);
        CHECK(basis.rows() == rows - rank(m));
        if (basis.rows() > 0) {
            const BitMatrix prod = matmul(basis, m);
            for (std::size_t i = 0; i < prod.rows(); ++i) CHECK(prod.row_is_zero(i));
            CHECK(rank(basis) == basis.rows());
        }
    }
}

TEST_CASE("gaussian binomial") {
    CHECK(gaussian_binomial(5, 0) == 1);
    CHECK(gaussian_binomial(4, 1) == 15);
    CHECK(gaussian_binomial(7, 3) == Int(127) * 126 * 124 / (7 * 6 * 4));
    CHECK(gaussian_binomial(7, 3) == 11811);
    CHECK_THROWS_AS(gaussian_binomial(3, 4), InputError);
}

TEST_CASE("subspace enumeration counts and distinctness") {
    {
        SubspaceEnumerator en(3, 1, Int(1000000));
        std::size_t count = 0;
        while (en.next()) ++count;
        CHECK(count == 7);
    }
    {
        SubspaceEnumerator en(2, 2, Int(1000000));
        auto only = en.next();
        REQUIRE(only.has_value());
        CHECK(*only == BitMatrix::identity(2));
        CHECK(!en.next().has_value());
    }
    {
        SubspaceEnumerator en(7, 3, Int(1000000));
        std::size_t count = 0;
        while (en.next()) ++count;
        CHECK(count == 11811);
    }
    // distinct row spaces for k <= 4: canonicalize via the span itself
    for (std::size_t k = 1; k <= 4; ++k) {
        for (std::size_t r = 0; r <= k; ++r) {
            SubspaceEnumerator en(k, r, Int(1000000));
            std::set<std::set<std::uint64_t>> spaces;
            std::size_t count = 0;
            while (auto basis = en.next()) {
                ++count;
                const auto rows = testutil::rows_of(*basis);
                std::set<std::uint64_t> span;
                for (std::uint64_t m = 0; m < (std::uint64_t{1} << r); ++m) {
                    std::uint64_t v = 0;
                    for (std::size_t i = 0; i < r; ++i) {
                        if ((m >> i) & 1u) v ^= rows[i];
                    }
                    span.insert(v);
                }
                CHECK(span.size() == (std::size_t{1} << r));  // rows independent
                spaces.insert(std::move(span));
            }
            CHECK(count == gaussian_binomial(k, r));
            CHECK(spaces.size() == count);
        }
    }
    // k up to 7: every emitted basis is its own canonical RREF and all bases
    // are distinct, so the row spaces are pairwise distinct too
    for (std::size_t k = 5; k <= 7; ++k) {
        for (std::size_t r = 0; r <= k; ++r) {
            SubspaceEnumerator en(k, r, Int(1000000));
            std::set<std::vector<std::uint64_t>> seen;
            Int count = 0;
            while (auto basis = en.next()) {
                ++count;
                const auto [red, piv] = rref(*basis);
                CHECK(red == *basis);
                CHECK(piv.size() == r);
                CHECK(seen.insert(testutil::rows_of(*basis)).second);
            }
            CHECK(count == gaussian_binomial(k, r));
        }
    }
}

TEST_CASE("subspace enumeration budget") {
    CHECK_THROWS_AS(SubspaceEnumerator(20, 10, Int(1000)), ResourceLimitError);
    try {
        SubspaceEnumerator en(20, 10, Int(1000));
    } catch (const ResourceLimitError& e) {
        CHECK(std::string(e.what()).find(gaussian_binomial(20, 10).get_str()) != std::string::npos);
    }
}
