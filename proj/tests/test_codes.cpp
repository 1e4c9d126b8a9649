#include "bect/code.hpp"

#include <sstream>

#include "bect/errors.hpp"
#include "bect/subspaces.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bect;

TEST_CASE("rm_code construction") {
    const auto rep = rm_code({3, 0});
    CHECK(rep.dimension() == 1);
    CHECK(rep.block_length() == 8);
    for (std::size_t j = 0; j < 8; ++j) CHECK(rep.generator().get(0, j));

    const auto full = rm_code({2, 2});
    CHECK(full.dimension() == 4);
    CHECK(full.block_length() == 4);
    CHECK(rank(full.generator()) == 4);

    const auto rm31 = rm_code({3, 1});
    CHECK(rm31.dimension() == 4);
    CHECK(rank(rm31.generator()) == 4);
    // row 1 is the evaluation of x_1: 1 exactly on odd points
    for (std::size_t j = 0; j < 8; ++j) CHECK(rm31.generator().get(1, j) == ((j & 1u) != 0));

    CHECK_THROWS_AS(rm_code({2, 3}), InputError);
    CHECK_THROWS_AS(rm_code({40, 2}), ResourceLimitError);
}

TEST_CASE("rm_dimension") {
    CHECK(rm_dimension(3, 1) == 4);
    CHECK(rm_dimension(4, 4) == 16);
    CHECK(rm_dimension(10, 5) == 638);
    CHECK_THROWS_AS(rm_dimension(3, 5), InputError);
}

TEST_CASE("min distance by brute force matches 2^(n-d) on small RM codes") {
    CHECK(min_distance_bruteforce(rm_code({3, 0})) == 8);
    CHECK(min_distance_bruteforce(rm_code({3, 1})) == 4);
    CHECK(min_distance_bruteforce(rm_code({3, 2})) == 2);
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t d = 0; d <= n; ++d) {
            CHECK(min_distance_bruteforce(rm_code({n, d})) ==
                  (std::size_t{1} << (n - d)));
        }
    }
    CHECK_THROWS_AS(min_distance_bruteforce(rm_code({5, 5})), ResourceLimitError);
}

TEST_CASE("wei subcode structure") {
    const auto s22 = wei_subcode(3, 2, 2);
    CHECK(s22.dimension() == 1);
    // spanned by the evaluation of x1 x2: 1 where both low bits of the point are 1
    for (std::size_t j = 0; j < 8; ++j) CHECK(s22.generator().get(0, j) == ((j & 3u) == 3u));

    CHECK(wei_subcode(4, 2, 1).dimension() == 4);
    CHECK(wei_subcode(4, 2, 0).generator() == rm_code({4, 2}).generator());
    CHECK_THROWS_AS(wei_subcode(3, 2, 3), InputError);

    // rows independent, OR of rows has exactly 2^(n-t) ones
    for (std::size_t n = 2; n <= 4; ++n) {
        for (std::size_t d = 0; d <= n; ++d) {
            for (std::size_t t = 0; t <= d; ++t) {
                const auto st = wei_subcode(n, d, t);
                CHECK(rank(st.generator()) == st.dimension());
                CHECK(Int(static_cast<unsigned long>(st.dimension())) ==
                      wei_point(n, d, t).dimension);
                CHECK(popcount_words(st.generator().or_of_rows()) ==
                      (std::size_t{1} << (n - t)));
            }
        }
    }
}

TEST_CASE("wei_point closed forms") {
    const auto wp421 = wei_point(4, 2, 1);
    CHECK(wp421.dimension == 4);
    CHECK(wp421.support == 8);
    const auto wp322 = wei_point(3, 2, 2);
    CHECK(wp322.dimension == 1);
    CHECK(wp322.support == 2);
    const auto wp321 = wei_point(3, 2, 1);
    CHECK(wp321.dimension == 3);
    CHECK(wp321.support == 4);
    // brute-force support of the 3 basis rows ORed
    const auto s321 = wei_subcode(3, 2, 1);
    CHECK(popcount_words(s321.generator().or_of_rows()) == 4);
}

TEST_CASE("dr_bruteforce on RM(3,2)") {
    const auto c = rm_code({3, 2});
    const auto d1 = dr_bruteforce(c, 1);
    CHECK(d1.value == 2);
    CHECK(d1.kind == WeightKind::exact);
    REQUIRE(d1.witness.has_value());
    CHECK(d1.witness->rows() == 1);
    CHECK(popcount_words(d1.witness->or_of_rows()) == 2);

    CHECK(dr_bruteforce(c, 3).value == 4);  // matches wei_point(3,2,1)
    CHECK(dr_bruteforce(c, 7).value == popcount_words(c.generator().or_of_rows()));
}

TEST_CASE("dr_bruteforce is nondecreasing and anchored at the minimum distance") {
    for (auto params : {RMParams{3, 1}, RMParams{3, 2}, RMParams{4, 1}}) {
        const auto c = rm_code(params);
        Int prev = 0;
        for (std::size_t r = 1; r <= c.dimension(); ++r) {
            const auto dr = dr_bruteforce(c, r);
            CHECK(dr.value >= prev);
            prev = dr.value;
            if (r == 1) {
                CHECK(dr.value == min_distance_bruteforce(c));
            }
            REQUIRE(dr.witness.has_value());
            CHECK(dr.witness->rows() == r);
            CHECK(rank(*dr.witness) == r);
            CHECK(popcount_words(dr.witness->or_of_rows()) == dr.value);
        }
    }
}

TEST_CASE("wei exactness at the wei points") {
    // every Wei point of RM(3,2) and RM(4,1): brute force meets 2^(n-t)
    for (auto params : {RMParams{3, 2}, RMParams{4, 1}}) {
        const auto c = rm_code(params);
        for (std::size_t t = 0; t <= params.d; ++t) {
            const auto wp = wei_point(params.n, params.d, t);
            const std::size_t r = static_cast<std::size_t>(wp.dimension.get_ui());
            const auto dr = dr_bruteforce(c, r);
            CHECK(dr.value == wp.support);
        }
    }
}

TEST_CASE("rm_dr_lower_bound") {
    CHECK(rm_dr_lower_bound(3, 2, Int(3)).value == 4);  // t* = 1
    CHECK(rm_dr_lower_bound(3, 2, Int(1)).value == 2);  // t* = 2
    CHECK(rm_dr_lower_bound(3, 2, rm_dimension(3, 2)).value == 8);  // t* = 0
    CHECK(rm_dr_lower_bound(3, 2, Int(5)).kind == WeightKind::lower_bound);
    CHECK_THROWS_AS(rm_dr_lower_bound(3, 2, Int(0)), InputError);
    CHECK_THROWS_AS(rm_dr_lower_bound(3, 2, Int(9)), InputError);

    // never exceeds the brute-force value where the oracle runs
    for (auto params : {RMParams{3, 1}, RMParams{3, 2}, RMParams{4, 1}}) {
        const auto c = rm_code(params);
        for (std::size_t r = 1; r <= c.dimension(); ++r) {
            CHECK(rm_dr_lower_bound(params.n, params.d, Int(static_cast<unsigned long>(r))).value <=
                  dr_bruteforce(c, r).value);
        }
    }
}

TEST_CASE("dr_dispatch falls back to the chain only out of budget") {
    const auto c = rm_code({3, 2});
    const auto exact = dr_dispatch(c, RMParams{3, 2}, Int(3));
    CHECK(exact.kind == WeightKind::exact);
    CHECK(exact.value == 4);
    const auto forced = dr_dispatch(c, RMParams{3, 2}, Int(3), Int(10));
    CHECK(forced.kind == WeightKind::lower_bound);
    CHECK(forced.value <= 4);
    CHECK_THROWS_AS(dr_dispatch(c, std::nullopt, Int(3), Int(10)), ResourceLimitError);
}

TEST_CASE("generator file round trip") {
    const auto rm31 = rm_code({3, 1});
    std::ostringstream out;
    save_code(rm31, out);
    const std::string text = out.str();
    CHECK(text.find(' ') != std::string::npos);
    CHECK(text.find("\n") != std::string::npos);
    CHECK(text.find(" \n") == std::string::npos);  // no trailing whitespace
    std::istringstream in(text);
    const auto back = load_code(in, "roundtrip");
    CHECK(back.generator() == rm31.generator());
}

TEST_CASE("generator file errors carry line numbers") {
    {
        std::istringstream in("# comment\n2 4\n1010\n101\n");
        try {
            load_code(in, "short-row");
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find(":4") != std::string::npos);
        }
    }
    {
        std::istringstream in("2 4\n1010\n1010\n");
        try {
            load_code(in, "dependent");
            FAIL("expected InputError");
        } catch (const InputError& e) {
            CHECK(std::string(e.what()).find("rank") != std::string::npos);
        }
    }
    {
        std::istringstream in("2 4\n10a0\n1010\n");
        CHECK_THROWS_AS(load_code(in, "alpha"), InputError);
    }
    {
        std::istringstream in("1010\n");
        CHECK_THROWS_AS(load_code(in, "no-header"), InputError);
    }
}
