#include "bect/verify.hpp"

#include <cmath>

#include "bect/errors.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace bect;

namespace {

std::vector<Rat> tenth_grid() {
    std::vector<Rat> g;
    for (int i = 1; i <= 9; ++i) {
        Rat q(i, 10);
        q.canonicalize();
        g.push_back(q);
    }
    return g;
}

std::vector<VerificationReport>& produced() {
    static std::vector<VerificationReport> reports;
    return reports;
}

VerificationReport keep(VerificationReport r) {
    produced().push_back(r);
    return r;
}

}  // namespace

TEST_CASE("tz identity exact on small codes") {
    const auto rep = keep(verify_tz_identity(rm_code({3, 0}), 1, tenth_grid()));
    CHECK(rep.verdict == Verdict::pass);
    // both sides are p^8: spot-check the recorded grid
    const auto* grid = rep.find("grid");
    REQUIRE(grid != nullptr);
    CHECK(Rat((*grid).value[4]["lhs"].get<std::string>()) == Rat(1, 256));

    for (std::size_t r = 1; r <= 4; ++r) {
        CHECK(keep(verify_tz_identity(rm_code({3, 1}), r, tenth_grid())).verdict == Verdict::pass);
    }
    // boundary r = k: identity reduces to Pr[h != 0] = f_k
    CHECK(keep(verify_tz_identity(rm_code({3, 2}), 7, tenth_grid())).verdict == Verdict::pass);
}

TEST_CASE("tz and margulis-russo sweep over small codes") {
    std::vector<LinearCode> codes;
    for (std::size_t n = 2; n <= 3; ++n) {
        for (std::size_t d = 0; d <= n; ++d) codes.push_back(rm_code({n, d}));
    }
    for (std::uint64_t s = 0; s < 8; ++s) {
        codes.push_back(testutil::random_code(2 + s % 5, 5 + s % 8, 400 + s));
    }
    for (const auto& code : codes) {
        for (std::size_t r = 1; r <= code.dimension(); ++r) {
            CHECK(keep(verify_tz_identity(code, r, tenth_grid())).verdict == Verdict::pass);
            CHECK(keep(verify_margulis_russo(code, r, tenth_grid())).verdict == Verdict::pass);
        }
    }
}

TEST_CASE("margulis-russo examples") {
    auto grid = tenth_grid();
    grid.emplace_back(0);  // p = 0 endpoint: both sides vanish
    CHECK(keep(verify_margulis_russo(rm_code({3, 0}), 1, grid)).verdict == Verdict::pass);
    for (std::size_t r = 1; r <= 4; ++r) {
        CHECK(keep(verify_margulis_russo(rm_code({3, 1}), r, tenth_grid())).verdict ==
              Verdict::pass);
    }
}

TEST_CASE("nu bound") {
    const auto rep = rm_code({3, 0});
    CHECK(keep(verify_nu_bound(rep, 1, dr_bruteforce(rep, 1))).verdict == Verdict::pass);
    const auto rm32 = rm_code({3, 2});
    CHECK(keep(verify_nu_bound(rm32, 1, dr_bruteforce(rm32, 1))).verdict == Verdict::pass);
    CHECK(keep(verify_nu_bound(rm32, 3, dr_bruteforce(rm32, 3))).verdict == Verdict::pass);
    // a fabricated oversized d_r must fail
    SupportWeightResult fake{Int(1), Int(1000), WeightKind::lower_bound, std::nullopt};
    CHECK(keep(verify_nu_bound(rm32, 1, fake)).verdict == Verdict::fail);
}

TEST_CASE("area bound") {
    const auto rep = rm_code({3, 0});
    const auto t = exact_weight_table(rep, 2);
    const auto r = keep(verify_area_bound(rep, t, 1, dr_bruteforce(rep, 1)));
    CHECK(r.verdict == Verdict::pass);
    CHECK(Rat(r.find("integral_gap")->value["rat"].get<std::string>()) == Rat(1, 9));
    CHECK(Rat(r.find("bound")->value["rat"].get<std::string>()) == Rat(1, 8));

    // trivial zero-gap row
    WeightTable flat;
    flat.N = 4;
    flat.rmax = 2;
    flat.A.assign(3, std::vector<Int>(5, 2));
    SupportWeightResult d{Int(1), Int(3), WeightKind::exact, std::nullopt};
    CHECK(keep(verify_area_bound(rep, flat, 1, d)).verdict == Verdict::pass);

    for (auto params : {RMParams{3, 1}, RMParams{3, 2}}) {
        const auto c = rm_code(params);
        const auto table = exact_weight_table(c, c.dimension() + 1);
        for (std::size_t rr = 1; rr <= c.dimension(); ++rr) {
            CHECK(keep(verify_area_bound(c, table, rr, dr_bruteforce(c, rr))).verdict ==
                  Verdict::pass);
        }
    }
}

TEST_CASE("compute_gamma") {
    const auto rm32 = rm_code({3, 2});
    const auto g1 = compute_gamma(rm32, RMParams{3, 2}, 1);
    CHECK(g1.gamma == 0.0);
    CHECK(g1.terms.empty());

    // d_1 = 2, d_3 = 4 are Wei points; d_2 = 3 (the even-weight code needs
    // three coordinates to hold a 2-dimensional subcode)
    CHECK(dr_bruteforce(rm32, 2).value == 3);
    const auto g4 = compute_gamma(rm32, RMParams{3, 2}, 4);
    Rat want(13, 12);  // 1/2 + 1/3 + 1/4
    CHECK(g4.gamma_sq == want);
    CHECK(g4.gamma == doctest::Approx(std::sqrt(13.0 / 12.0)));
    CHECK(!g4.any_lower_bound);

    // forced lower bounds flip the provenance flag
    const auto glb = compute_gamma(rm32, RMParams{3, 2}, 4, Int(1));
    CHECK(glb.any_lower_bound);
    CHECK_THROWS_AS(compute_gamma(rm32, RMParams{3, 2}, 9), InputError);

    // large code: every term comes from the chain; hand-reduced sum
    // 6/32 + 22/64 + 35/128 = 103/128 over r = 1..63
    const auto big = compute_gamma(rm_code({10, 5}), RMParams{10, 5}, 64);
    CHECK(big.any_lower_bound);
    CHECK(big.gamma_sq == Rat(103, 128));
    for (const auto& t : big.terms) CHECK(t.kind == WeightKind::lower_bound);
}

TEST_CASE("lower-bound provenance propagates into area reports") {
    const auto c = rm_code({3, 1});
    const auto t = exact_weight_table(c, 2);
    const auto lb = rm_dr_lower_bound(3, 1, Int(1));
    REQUIRE(lb.kind == WeightKind::lower_bound);
    const auto rep = keep(verify_area_bound(c, t, 1, lb));
    CHECK(rep.verdict == Verdict::pass);
    CHECK(rep.find("d_r")->kind == ValueKind::lower_bound);
    CHECK(rep.find("bound")->kind == ValueKind::lower_bound);
    CHECK(rep.narrative.find("weaker") != std::string::npos);
}

TEST_CASE("straightshot") {
    McSettings mc;
    mc.seed = 5;
    mc.trials_per_probe = 4000;
    mc.p_tol = 0.01;

    const auto rm31 = rm_code({3, 1});
    // N0 = 1 is the trivial identity
    CHECK(keep(verify_straightshot(rm31, RMParams{3, 1}, 1, 0.3, mc)).verdict == Verdict::pass);

    // gamma = 1/2 for N0 = 2 (d_1 = 4); alpha = 0.3 satisfies alpha+gamma <= 1
    const auto r2 = keep(verify_straightshot(rm31, RMParams{3, 1}, 2, 0.3, mc));
    CHECK(r2.verdict == Verdict::pass);

    // RM(3,2) at N0=4 has gamma = sqrt(5)/2 > 1: precondition violated
    const auto na = keep(verify_straightshot(rm_code({3, 2}), RMParams{3, 2}, 4, 0.3, mc));
    CHECK(na.verdict == Verdict::not_applicable);
}

TEST_CASE("bittoblock degenerate and small runs") {
    McSettings mc;
    mc.trials = 4000;
    mc.seed = 9;

    const auto rm63 = rm_code({6, 3});
    // p = 0: no bit errors, delta = 0, subcode range empty
    const auto deg = keep(verify_bittoblock(rm63, RMParams{6, 3}, 0.0, mc));
    CHECK(deg.verdict == Verdict::not_applicable);
    CHECK(deg.find("delta_hat") != nullptr);

    // a moderate p below threshold: the bound is loose, expect a pass
    const auto run = keep(verify_bittoblock(rm63, RMParams{6, 3}, 0.35, mc));
    CHECK(run.verdict == Verdict::pass);
    CHECK(run.find("Delta") != nullptr);

    // N < 10 violates the theorem hypothesis
    const auto tiny = keep(verify_bittoblock(rm_code({3, 1}), RMParams{3, 1}, 0.3, mc));
    CHECK(tiny.verdict == Verdict::not_applicable);
}

TEST_CASE("bitcapacity quick run") {
    McSettings mc;
    mc.trials = 5000;
    mc.trials_per_probe = 5000;
    mc.p_tol = 0.01;
    mc.seed = 33;
    const auto rm63 = rm_code({6, 3});
    const auto pstar = estimate_pstar(rm63, 0, mc.trials_per_probe, mc.p_tol, mc.seed);
    const auto rep = keep(verify_bitcapacity(
        rm63, {pstar.p_hat, pstar.p_hat - 0.05, pstar.p_hat - 0.15}, 0, mc, pstar));
    CHECK(rep.verdict == Verdict::pass);
    // entries above pstar are skipped, not failed
    const auto skip = keep(verify_bitcapacity(rm63, {0.99}, 0, mc, pstar));
    CHECK(skip.verdict == Verdict::not_applicable);
}

TEST_CASE("rmbounds hypotheses and a thin sample") {
    // 5 sqrt(100 log2 100) = 128.9 > d = 50: empty range
    CHECK(keep(verify_rmbounds(100, 50)).verdict == Verdict::not_applicable);

    const unsigned long tmin = ceil_mul_sqrt_n_log2n(5, 1200);
    const auto rep = keep(verify_rmbounds(1200, 600, {tmin, 600}));
    CHECK(rep.verdict == Verdict::pass);

    // d far above the allowed band
    CHECK(keep(verify_rmbounds(1200, 1100)).verdict == Verdict::not_applicable);
}

TEST_CASE("ratiorm hypotheses") {
    // n = 100: 6 sqrt(log2(100)/100) = 1.55 > 1/2, no valid eps exists
    CHECK(keep(verify_ratiorm(100, 50, EpsSpec::rational(Rat(1, 2)))).verdict ==
          Verdict::not_applicable);
    // small n with the symbolic minimum still fails eps <= 1/2
    CHECK(keep(verify_ratiorm(100, 50, EpsSpec::sqrt_log_over_n(6))).verdict ==
          Verdict::not_applicable);
}

TEST_CASE("rmcapacity preconditions") {
    // desk scale: the eps hypothesis is vacuous
    const auto small = keep(verify_rmcapacity_preconditions(10, 5, EpsSpec::rational(Rat(3, 10))));
    CHECK(small.verdict == Verdict::not_applicable);

    CHECK(keep(verify_rmcapacity_preconditions(10, 5, EpsSpec::rational(Rat(0)))).verdict ==
          Verdict::not_applicable);

    // large n where every explicit inequality holds (checked by hand:
    // 20 sqrt(13/8192) = 0.796 <= 1, 2^-81.92 < 1/4, d = n/2, 3(d-1) <= 2n)
    const auto big = keep(verify_rmcapacity_preconditions(8192, 4096, EpsSpec::rational(Rat(1))));
    CHECK(big.verdict == Verdict::pass);
}

TEST_CASE("eps spec parsing") {
    CHECK(EpsSpec::parse("0.25", 6).kind == EpsSpec::Kind::rational);
    CHECK(EpsSpec::parse("0.25", 6).value == Rat(1, 4));
    CHECK(EpsSpec::parse("min", 6).kind == EpsSpec::Kind::sqrt_log_over_n);
    CHECK(EpsSpec::parse("min", 6).mult == 6);
}

TEST_CASE("every report rechecks to its own verdict and survives json") {
    for (const auto& rep : produced()) {
        CHECK(rep.recheck() == rep.verdict);
        const auto back = VerificationReport::from_json(rep.to_json());
        CHECK(back.recheck() == rep.verdict);
        CHECK(back.claim_id == rep.claim_id);
    }
    CHECK(produced().size() > 20);
}

TEST_CASE("tampering with a recorded check flips the recheck") {
    auto rep = verify_area_bound(rm_code({3, 0}), exact_weight_table(rm_code({3, 0}), 2), 1,
                                 dr_bruteforce(rm_code({3, 0}), 1));
    REQUIRE(rep.verdict == Verdict::pass);
    auto j = rep.to_json();
    j["main_checks"][0]["lhs"]["rat"] = "2/1";  // claim the area were 2
    const auto tampered = VerificationReport::from_json(j);
    CHECK(tampered.recheck() == Verdict::fail);
}
