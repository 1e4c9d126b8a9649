// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exit code = number of failures.

#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <set>
#include <string>
#include <vector>

#include "bect/analysis.hpp"
#include "bect/bigmath.hpp"
#include "bect/code.hpp"
#include "bect/erasure.hpp"
#include "bect/subspaces.hpp"
#include "bect/verify.hpp"

using namespace bect;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail += (detail.empty() ? "" : "; ") + what;
        }
    }
    void note(const std::string& what) {
        detail += (detail.empty() ? "" : "; ") + what;
    }
};

std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::vector<Rat> tenth_grid() {
    std::vector<Rat> g;
    for (int i = 1; i <= 9; ++i) {
        Rat q(i, 10);
        q.canonicalize();
        g.push_back(q);
    }
    return g;
}

// ---- criterion 1: exact Tillich-Zemor identity, <= 1e-12 ----
Outcome criterion1() {
    Outcome out;
    const Rat tol(1, 1000000000000L);
    for (auto params : {RMParams{3, 1}, RMParams{3, 2}}) {
        const auto code = rm_code(params);
        for (std::size_t r = 1; r <= code.dimension(); ++r) {
            const auto rep = verify_tz_identity(code, r, tenth_grid());
            out.require(rep.verdict == Verdict::pass,
                        "tz RM(" + std::to_string(params.n) + "," + std::to_string(params.d) +
                            ") r=" + std::to_string(r));
            Rat disc(rep.find("max_abs_discrepancy")->value["rat"].get<std::string>(), 10);
            disc.canonicalize();
            out.require(disc <= tol, "discrepancy above 1e-12");
        }
    }
    return out;
}

// ---- criterion 2: exact Margulis-Russo identity, <= 1e-10 ----
Outcome criterion2() {
    Outcome out;
    const Rat tol(1, 10000000000L);
    for (auto params : {RMParams{3, 1}, RMParams{3, 2}}) {
        const auto code = rm_code(params);
        for (std::size_t r = 1; r <= code.dimension(); ++r) {
            const auto rep = verify_margulis_russo(code, r, tenth_grid());
            out.require(rep.verdict == Verdict::pass,
                        "russo RM(" + std::to_string(params.n) + "," + std::to_string(params.d) +
                            ") r=" + std::to_string(r));
            Rat disc(rep.find("max_abs_discrepancy")->value["rat"].get<std::string>(), 10);
            disc.canonicalize();
            out.require(disc <= tol, "discrepancy above 1e-10");
        }
    }
    return out;
}

// ---- criterion 3: exact area bound with brute-forced d_r ----
Outcome criterion3() {
    Outcome out;
    for (auto params : {RMParams{3, 0}, RMParams{3, 1}, RMParams{3, 2}, RMParams{4, 1}}) {
        const auto code = rm_code(params);
        const auto table = exact_weight_table(code, code.dimension() + 1);
        for (std::size_t r = 1; r <= code.dimension(); ++r) {
            const auto dr = dr_bruteforce(code, r);
            const auto rep = verify_area_bound(code, table, r, dr);
            out.require(rep.verdict == Verdict::pass,
                        "area RM(" + std::to_string(params.n) + "," + std::to_string(params.d) +
                            ") r=" + std::to_string(r));
            if (params.n == 3 && params.d == 0 && r == 1) {
                Rat gap(rep.find("integral_gap")->value["rat"].get<std::string>(), 10);
                gap.canonicalize();
                out.require(gap == Rat(1, 9), "sharp instance gap != 1/9");
                out.require(dr.value == 8, "sharp instance d_1 != 8");
            }
        }
    }
    out.note("includes the sharp instance 1/9 <= 1/8");
    return out;
}

// ---- criterion 4: nu_{g_r} >= d_r exhaustively ----
Outcome criterion4() {
    Outcome out;
    for (auto params : {RMParams{3, 1}, RMParams{3, 2}}) {
        const auto code = rm_code(params);
        for (std::size_t r = 1; r <= code.dimension(); ++r) {
            const auto rep = verify_nu_bound(code, r, dr_bruteforce(code, r));
            out.require(rep.verdict == Verdict::pass,
                        "nu RM(" + std::to_string(params.n) + "," + std::to_string(params.d) +
                            ") r=" + std::to_string(r));
        }
    }
    return out;
}

// ---- criterion 5: Wei exactness ----
Outcome criterion5() {
    Outcome out;
    const Int budget(100000000);
    for (auto params : {RMParams{3, 2}, RMParams{4, 1}}) {
        const auto code = rm_code(params);
        for (std::size_t t = 0; t <= params.d; ++t) {
            const auto wp = wei_point(params.n, params.d, t);
            const std::size_t r = static_cast<std::size_t>(wp.dimension.get_ui());
            if (gaussian_binomial(code.dimension(), r) > budget) continue;
            const auto dr = dr_bruteforce(code, r, budget);
            out.require(dr.value == wp.support,
                        "wei point RM(" + std::to_string(params.n) + "," +
                            std::to_string(params.d) + ") t=" + std::to_string(t));
        }
    }
    for (std::size_t n = 1; n <= 4; ++n) {
        for (std::size_t d = 0; d <= n; ++d) {
            const auto code = rm_code({n, d});
            const auto d1 = dr_bruteforce(code, 1, budget);
            out.require(d1.value == pow2(n - d),
                        "d_1 RM(" + std::to_string(n) + "," + std::to_string(d) + ")");
            out.require(Int(static_cast<unsigned long>(min_distance_bruteforce(code))) == d1.value,
                        "dmin vs d_1 mismatch");
        }
    }
    return out;
}

// ---- criterion 6: Monte Carlo calibration (also reused by criterion 12) ----
std::string criterion6_numeric(unsigned threads, std::uint64_t seed, Outcome& out) {
    const auto code = rm_code({4, 2});
    const auto table = exact_weight_table(code, 3);
    std::string numeric;
    for (double p : {0.3, 0.5, 0.7}) {
        for (std::size_t r : {std::size_t{1}, std::size_t{2}}) {
            const auto est = mc_fr(code, p, r, 100000, seed, threads);
            const double exact = exact_fr(table, r, p);
            out.require(std::abs(est.estimate - exact) <= 4 * est.stderr_,
                        "mc_fr off at p=" + fmt(p) + " r=" + std::to_string(r));
            numeric += fmt(p) + " " + std::to_string(r) + " " + std::to_string(est.successes) +
                       " " + fmt(est.estimate) + " " + fmt(est.stderr_) + "\n";
        }
    }
    return numeric;
}

Outcome criterion6() {
    Outcome out;
    criterion6_numeric(1, 20260809, out);
    return out;
}

// ---- criterion 7: exact bignum Lemma checks at n in {1200,1600,2000} ----
Outcome criterion7() {
    Outcome out;
    for (unsigned long n : {1200ul, 1600ul, 2000ul}) {
        const unsigned long s = floor_sqrt_n_log2n(n);
        for (unsigned long d : {n / 2, n / 2 + s}) {
            const auto rep = verify_rmbounds(n, d);
            out.require(rep.verdict == Verdict::pass,
                        "rmbounds n=" + std::to_string(n) + " d=" + std::to_string(d) + " -> " +
                            to_string(rep.verdict));
        }
    }
    return out;
}

// ---- criterion 8: ratio bound through the lower-bound chain at n=1600 ----
Outcome criterion8() {
    Outcome out;
    struct Case {
        EpsSpec eps;
        Verdict expect;
        const char* label;
    };
    const std::vector<Case> cases{
        {EpsSpec::sqrt_log_over_n(6), Verdict::pass, "eps=min"},
        {EpsSpec::rational(Rat(1, 4)), Verdict::not_applicable, "eps=0.25"},
        {EpsSpec::rational(Rat(1, 2)), Verdict::pass, "eps=0.5"},
    };
    for (const auto& c : cases) {
        const auto rep = verify_ratiorm(1600, 800, c.eps);
        // every recorded per-r exact inequality must hold, for all three eps
        std::size_t holds = 0, total = 0;
        for (const auto& chk : rep.main_checks) {
            ++total;
            if (chk.holds) ++holds;
        }
        out.require(total > 800, std::string(c.label) + ": too few r samples");
        out.require(holds == total,
                    std::string(c.label) + ": " + std::to_string(total - holds) +
                        " ratio inequalities failed");
        out.require(rep.verdict == c.expect,
                    std::string(c.label) + ": verdict " + to_string(rep.verdict) + " != " +
                        to_string(c.expect));
    }
    out.note("eps=0.25 fails the corollary's eps hypothesis at n=1600, so its verdict is "
             "not_applicable while every recorded ratio inequality still holds");
    return out;
}

// ---- criterion 9: bit-error decay bound (also reused by criterion 12) ----
std::string criterion9_numeric(unsigned threads, std::uint64_t seed, Outcome& out) {
    std::string numeric;
    for (auto params : {RMParams{8, 4}, RMParams{10, 5}}) {
        const auto code = rm_code(params);
        McSettings mc;
        mc.trials = 100000;
        mc.trials_per_probe = 10000;
        mc.p_tol = 0.005;
        mc.seed = seed;
        mc.threads = threads;
        const auto pstar = estimate_pstar(code, 0, mc.trials_per_probe, mc.p_tol, mc.seed,
                                          mc.threads);
        const std::vector<double> ps{pstar.p_hat - 0.02, pstar.p_hat - 0.05, pstar.p_hat - 0.10};
        const auto rep = verify_bitcapacity(code, ps, 0, mc, pstar);
        out.require(rep.verdict == Verdict::pass,
                    "bitcapacity RM(" + std::to_string(params.n) + "," +
                        std::to_string(params.d) + ") -> " + to_string(rep.verdict));
        numeric += rep.to_json().dump() + "\n";
    }
    return numeric;
}

Outcome criterion9() {
    Outcome out;
    criterion9_numeric(1, 90905, out);
    return out;
}

// ---- criterion 10: end-to-end bit-to-block desk check (reused by 12) ----
std::string criterion10_numeric(unsigned threads, std::uint64_t seed, Outcome& out) {
    const auto code = rm_code({10, 5});
    McSettings mc;
    mc.trials = 100000;
    mc.trials_per_probe = 10000;
    mc.p_tol = 0.005;
    mc.seed = seed;
    mc.threads = threads;
    const auto pstar = estimate_pstar(code, 0, mc.trials_per_probe, mc.p_tol, mc.seed, mc.threads);
    const double p = pstar.p_hat - 0.1;
    const auto rep = verify_bittoblock(code, RMParams{10, 5}, p, mc);
    out.require(rep.verdict == Verdict::pass,
                "bittoblock RM(10,5) -> " + to_string(rep.verdict));
    // the criterion's literal inequality, from the recorded intermediates
    const auto* block = rep.find("block_error_estimate");
    const auto* bound = rep.find("rhs_bound");
    const auto* delta = rep.find("Delta");
    out.require(block != nullptr && bound != nullptr && delta != nullptr,
                "report is missing recorded quantities");
    if (block && bound && delta) {
        const double est = block->value["real"].get<double>();
        const double margin = *block->margin;  // 4*stderr
        const double rhs = bound->value["real"].get<double>();
        out.require(est - margin <= rhs, "block estimate minus 4 sigma exceeds the bound");
        out.require(delta->kind == ValueKind::lower_bound,
                    "Delta should come from the Wei lower-bound chain");
    }
    return rep.to_json().dump() + "\n";
}

Outcome criterion10() {
    Outcome out;
    criterion10_numeric(1, 101010, out);
    return out;
}

// ---- criterion 11: sharpness across RM(6,3) -> RM(8,4) -> RM(10,5) ----
Outcome criterion11() {
    Outcome out;
    // the asymptotic capacity statement is vacuous at desk scale; the checker
    // must report that for n = 10 before the substituted sharpness property
    const auto pre = verify_rmcapacity_preconditions(10, 5, EpsSpec::rational(Rat(3, 10)));
    out.require(pre.verdict == Verdict::not_applicable,
                "rmcapacity preconditions unexpectedly " + to_string(pre.verdict));

    struct Point {
        RMParams params;
        WidthEstimate width;
    };
    std::vector<Point> points;
    std::uint64_t seed = 111213;
    for (auto params : {RMParams{6, 3}, RMParams{8, 4}, RMParams{10, 5}}) {
        const auto code = rm_code(params);
        points.push_back(
            {params, transition_width(code, 1, 0.1, 0.9, 10000, 0.004, seed, 1)});
        seed += 100;
    }
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        const auto& a = points[i];
        const auto& b = points[i + 1];
        out.require(a.width.width_lo > b.width.width_hi,
                    "width(RM(" + std::to_string(a.params.n) + "," + std::to_string(a.params.d) +
                        ")) not conservatively above width(RM(" + std::to_string(b.params.n) +
                        "," + std::to_string(b.params.d) + "))");
    }
    std::string widths;
    for (const auto& pt : points) {
        widths += " RM(" + std::to_string(pt.params.n) + "," + std::to_string(pt.params.d) +
                  ")=" + fmt(pt.width.width);
    }
    out.note("widths:" + widths);
    return out;
}

// ---- criterion 12: determinism ----
Outcome criterion12() {
    Outcome out;
    {
        Outcome scratch;
        const std::string a = criterion6_numeric(1, 20260809, scratch);
        const std::string b = criterion6_numeric(1, 20260809, scratch);
        const std::string c = criterion6_numeric(4, 20260809, scratch);
        out.require(a == b, "criterion 6 rerun differs at the same seed");
        out.require(a == c, "criterion 6 differs between 1 and 4 threads");
    }
    {
        Outcome scratch;
        const std::string a = criterion9_numeric(1, 90905, scratch);
        const std::string b = criterion9_numeric(4, 90905, scratch);
        out.require(a == b, "criterion 9 differs between 1 and 4 threads");
        out.require(scratch.pass, "criterion 9 rerun failed its own checks");
    }
    {
        Outcome scratch;
        const std::string a = criterion10_numeric(1, 101010, scratch);
        const std::string b = criterion10_numeric(4, 101010, scratch);
        out.require(a == b, "criterion 10 differs between 1 and 4 threads");
        out.require(scratch.pass, "criterion 10 rerun failed its own checks");
    }
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    struct Criterion {
        int id;
        const char* what;
        std::function<Outcome()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "exact Tillich-Zemor identity on RM(3,1), RM(3,2), all r, p in 0.1..0.9", criterion1},
        {2, "exact Margulis-Russo identity on the same codes and grid", criterion2},
        {3, "exact rational area bound on RM(3,0), RM(3,1), RM(3,2), RM(4,1)", criterion3},
        {4, "exhaustive nu_{g_r} >= d_r on RM(3,1), RM(3,2)", criterion4},
        {5, "Wei exactness at Wei points and d_1 = 2^(n-d) for n <= 4", criterion5},
        {6, "Monte Carlo calibration against exact curves on RM(4,2)", criterion6},
        {7, "exact bignum subcode bounds at n in {1200, 1600, 2000}", criterion7},
        {8, "exact ratio bound chain at n=1600 over powers of two and Wei dims", criterion8},
        {9, "bit-error decay bound on RM(8,4) and RM(10,5)", criterion9},
        {10, "bit-to-block desk check on RM(10,5)", criterion10},
        {11, "transition sharpness RM(6,3) > RM(8,4) > RM(10,5); capacity preconditions at n=10",
         criterion11},
        {12, "determinism: reruns and thread counts reproduce bytes", criterion12},
    };

    std::set<int> selected;
    for (int i = 1; i < argc; ++i) selected.insert(std::atoi(argv[i]));

    int failures = 0;
    for (const auto& c : criteria) {
        if (!selected.empty() && !selected.count(c.id)) continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome out;
        try {
            out = c.run();
        } catch (const std::exception& e) {
            out.pass = false;
            out.detail = std::string("exception: ") + e.what();
        }
        const double secs =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::printf("[%s] criterion %2d (%6.1fs): %s%s%s\n", out.pass ? "PASS" : "FAIL", c.id,
                    secs, c.what, out.detail.empty() ? "" : " -- ", out.detail.c_str());
        std::fflush(stdout);
        if (!out.pass) ++failures;
    }
    if (failures == 0) {
        std::printf("acceptance: all criteria passed\n");
    } else {
        std::printf("acceptance: %d criteria FAILED\n", failures);
    }
    return failures;
}
