#include "bect/verify.hpp"

#include <algorithm>
#include <cmath>

#include "bect/errors.hpp"
#include "bect/subspaces.hpp"

namespace bect {

std::string to_string(Verdict v) {
    switch (v) {
        case Verdict::pass: return "pass";
        case Verdict::fail: return "fail";
        case Verdict::inconclusive: return "inconclusive";
        case Verdict::not_applicable: return "not_applicable";
    }
    return "?";
}

std::string to_string(ValueKind k) {
    switch (k) {
        case ValueKind::exact: return "exact";
        case ValueKind::lower_bound: return "lower-bound";
        case ValueKind::monte_carlo: return "monte-carlo";
    }
    return "?";
}

nlohmann::json rat_value(const Rat& q) { return nlohmann::json{{"rat", q.get_str()}}; }
nlohmann::json int_value(const Int& v) { return nlohmann::json{{"int", v.get_str()}}; }
nlohmann::json real_value(double v) { return nlohmann::json{{"real", v}}; }

namespace {

// sign of lhs - rhs for tagged values; "rat" and "int" may be mixed.
int compare_values(const nlohmann::json& lhs, const nlohmann::json& rhs) {
    auto as_rat = [](const nlohmann::json& v) -> std::optional<Rat> {
        if (v.contains("rat")) {
            Rat q(v.at("rat").get<std::string>(), 10);
            q.canonicalize();
            return q;
        }
        if (v.contains("int")) return Rat(Int(v.at("int").get<std::string>(), 10));
        return std::nullopt;
    };
    const auto lq = as_rat(lhs);
    const auto rq = as_rat(rhs);
    if (lq && rq) return cmp(*lq, *rq);
    if (lhs.contains("real") && rhs.contains("real")) {
        const double a = lhs.at("real").get<double>();
        const double b = rhs.at("real").get<double>();
        if (a < b) return -1;
        return a > b ? 1 : 0;
    }
    throw InputError("check compares incompatible value tags");
}

bool eval_check(const Check& c) {
    const int s = compare_values(c.lhs, c.rhs);
    if (c.cmp == "<=") return s <= 0;
    if (c.cmp == "<") return s < 0;
    if (c.cmp == ">=") return s >= 0;
    if (c.cmp == ">") return s > 0;
    if (c.cmp == "==") return s == 0;
    throw InputError("unknown comparison '" + c.cmp + "'");
}

Check make_check(std::string name, nlohmann::json lhs, std::string cmp, nlohmann::json rhs) {
    Check c{std::move(name), std::move(lhs), std::move(cmp), std::move(rhs), false};
    c.holds = eval_check(c);
    return c;
}

nlohmann::json check_to_json(const Check& c) {
    return nlohmann::json{
        {"name", c.name}, {"lhs", c.lhs}, {"cmp", c.cmp}, {"rhs", c.rhs}, {"holds", c.holds}};
}

Check check_from_json(const nlohmann::json& j) {
    Check c;
    c.name = j.at("name").get<std::string>();
    c.lhs = j.at("lhs");
    c.cmp = j.at("cmp").get<std::string>();
    c.rhs = j.at("rhs");
    c.holds = j.at("holds").get<bool>();
    return c;
}

}  // namespace

void VerificationReport::add(std::string name, nlohmann::json value, ValueKind kind,
                             std::optional<double> margin) {
    intermediates.push_back(Intermediate{std::move(name), std::move(value), kind, margin});
}

const Intermediate* VerificationReport::find(const std::string& name) const {
    for (const auto& im : intermediates) {
        if (im.name == name) return &im;
    }
    return nullptr;
}

Verdict VerificationReport::recheck() const {
    for (const auto& h : hypotheses) {
        if (!eval_check(h)) return Verdict::not_applicable;
    }
    bool all_main = true;
    for (const auto& m : main_checks) {
        if (!eval_check(m)) all_main = false;
    }
    if (all_main) return Verdict::pass;
    for (const auto& v : violation_checks) {
        if (eval_check(v)) return Verdict::fail;
    }
    return rule == "exact" ? Verdict::fail : Verdict::inconclusive;
}

void VerificationReport::finalize() { verdict = recheck(); }

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json ims = nlohmann::json::array();
    for (const auto& im : intermediates) {
        nlohmann::json o{{"name", im.name}, {"value", im.value}, {"kind", to_string(im.kind)}};
        if (im.margin) o["margin"] = *im.margin;
        ims.push_back(std::move(o));
    }
    auto checks_json = [](const std::vector<Check>& cs) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& c : cs) a.push_back(check_to_json(c));
        return a;
    };
    return nlohmann::json{{"claim_id", claim_id},
                          {"inputs", inputs},
                          {"intermediates", std::move(ims)},
                          {"rule", rule},
                          {"hypotheses", checks_json(hypotheses)},
                          {"main_checks", checks_json(main_checks)},
                          {"violation_checks", checks_json(violation_checks)},
                          {"verdict", to_string(verdict)},
                          {"narrative", narrative}};
}

VerificationReport VerificationReport::from_json(const nlohmann::json& j) {
    VerificationReport r;
    r.claim_id = j.at("claim_id").get<std::string>();
    r.inputs = j.at("inputs");
    for (const auto& im : j.at("intermediates")) {
        Intermediate v;
        v.name = im.at("name").get<std::string>();
        v.value = im.at("value");
        const std::string k = im.at("kind").get<std::string>();
        v.kind = k == "exact" ? ValueKind::exact
                              : (k == "lower-bound" ? ValueKind::lower_bound : ValueKind::monte_carlo);
        if (im.contains("margin")) v.margin = im.at("margin").get<double>();
        r.intermediates.push_back(std::move(v));
    }
    r.rule = j.at("rule").get<std::string>();
    for (const auto& c : j.at("hypotheses")) r.hypotheses.push_back(check_from_json(c));
    for (const auto& c : j.at("main_checks")) r.main_checks.push_back(check_from_json(c));
    for (const auto& c : j.at("violation_checks")) r.violation_checks.push_back(check_from_json(c));
    const std::string v = j.at("verdict").get<std::string>();
    r.verdict = v == "pass" ? Verdict::pass
                            : (v == "fail" ? Verdict::fail
                                           : (v == "inconclusive" ? Verdict::inconclusive
                                                                  : Verdict::not_applicable));
    r.narrative = j.at("narrative").get<std::string>();
    return r;
}

EpsSpec EpsSpec::rational(const Rat& v) {
    EpsSpec e;
    e.kind = Kind::rational;
    e.value = v;
    return e;
}

EpsSpec EpsSpec::sqrt_log_over_n(unsigned long mult) {
    EpsSpec e;
    e.kind = Kind::sqrt_log_over_n;
    e.mult = mult;
    return e;
}

EpsSpec EpsSpec::parse(const std::string& text, unsigned long min_mult) {
    if (text == "min") return sqrt_log_over_n(min_mult);
    return rational(parse_decimal(text));
}

std::string EpsSpec::describe() const {
    if (kind == Kind::rational) return value.get_str();
    return std::to_string(mult) + "*sqrt(log2(n)/n)";
}

// ---------------------------------------------------------------------------
// exact exhaustive checkers
// ---------------------------------------------------------------------------

VerificationReport verify_tz_identity(const LinearCode& code, std::size_t r,
                                      const std::vector<Rat>& p_grid,
                                      std::size_t exhaustive_budget) {
    if (r < 1 || r > code.dimension()) throw InputError("verify_tz_identity: r outside 1..k");
    VerificationReport rep;
    rep.claim_id = "tz-identity";
    rep.inputs = {{"N", code.block_length()}, {"k", code.dimension()}, {"r", r}};
    const auto counts = h_weight_counts(code, r, exhaustive_budget);
    const auto table = exact_weight_table(code, r + 1, exhaustive_budget);
    Rat max_disc = 0;
    nlohmann::json grid = nlohmann::json::array();
    for (const Rat& p : p_grid) {
        const Rat lhs = eval_weight_poly(counts.nonzero, counts.N, p);
        const Rat rhs = exact_fr(table, r, p) - exact_fr(table, r + 1, p);
        Rat disc = lhs - rhs;
        if (disc < 0) disc = -disc;
        if (disc > max_disc) max_disc = disc;
        grid.push_back({{"p", p.get_str()}, {"lhs", lhs.get_str()}, {"rhs", rhs.get_str()}});
    }
    rep.add("grid", grid, ValueKind::exact);
    rep.add("max_abs_discrepancy", rat_value(max_disc), ValueKind::exact);
    rep.main_checks.push_back(
        make_check("Pr[h!=0] == f_r - f_{r+1} within 1e-12", rat_value(max_disc), "<=",
                   rat_value(Rat(1, 1000000000000L))));
    rep.narrative = "exhaustive rational evaluation of both sides on " +
                    std::to_string(p_grid.size()) + " grid points";
    rep.finalize();
    return rep;
}

VerificationReport verify_nu_bound(const LinearCode& code, std::size_t r,
                                   const SupportWeightResult& d_r,
                                   std::size_t exhaustive_budget) {
    VerificationReport rep;
    rep.claim_id = "nu-bound";
    rep.inputs = {{"N", code.block_length()}, {"k", code.dimension()}, {"r", r}};
    const std::size_t nu = nu_gr(code, r, exhaustive_budget);
    rep.add("nu_gr", int_value(Int(static_cast<unsigned long>(nu))), ValueKind::exact);
    const ValueKind dk = d_r.kind == WeightKind::exact ? ValueKind::exact : ValueKind::lower_bound;
    rep.add("d_r", int_value(d_r.value), dk);
    rep.main_checks.push_back(make_check("nu_gr >= d_r",
                                         int_value(Int(static_cast<unsigned long>(nu))), ">=",
                                         int_value(d_r.value)));
    rep.narrative = d_r.kind == WeightKind::exact
                        ? "exhaustive nu against the exact d_r"
                        : "exhaustive nu against a d_r lower bound (implied weaker inequality)";
    rep.finalize();
    return rep;
}

VerificationReport verify_margulis_russo(const LinearCode& code, std::size_t r,
                                         const std::vector<Rat>& p_grid,
                                         std::size_t exhaustive_budget) {
    if (r < 1 || r > code.dimension()) throw InputError("verify_margulis_russo: r outside 1..k");
    VerificationReport rep;
    rep.claim_id = "margulis-russo";
    rep.inputs = {{"N", code.block_length()}, {"k", code.dimension()}, {"r", r}};
    const auto counts = h_weight_counts(code, r, exhaustive_budget);
    const auto table = exact_weight_table(code, r, exhaustive_budget);
    Rat max_disc = 0;
    nlohmann::json grid = nlohmann::json::array();
    for (const Rat& p : p_grid) {
        const Rat lhs = p * exact_fr_derivative(table, r, p);
        const Rat rhs = eval_weight_poly(counts.total, counts.N, p);
        Rat disc = lhs - rhs;
        if (disc < 0) disc = -disc;
        if (disc > max_disc) max_disc = disc;
        grid.push_back({{"p", p.get_str()}, {"lhs", lhs.get_str()}, {"rhs", rhs.get_str()}});
    }
    rep.add("grid", grid, ValueKind::exact);
    rep.add("max_abs_discrepancy", rat_value(max_disc), ValueKind::exact);
    rep.main_checks.push_back(make_check("p*f_r'(p) == E[h] within 1e-10", rat_value(max_disc),
                                         "<=", rat_value(Rat(1, 10000000000L))));
    rep.narrative = "analytic derivative from the weight table against the exhaustive h expectation";
    rep.finalize();
    return rep;
}

VerificationReport verify_area_bound(const LinearCode& code, const WeightTable& table,
                                     std::size_t r, const SupportWeightResult& d_r) {
    VerificationReport rep;
    rep.claim_id = "area-bound";
    rep.inputs = {{"N", code.block_length()}, {"k", code.dimension()}, {"r", r}};
    const Rat gap = exact_integral_gap(table, r);
    if (d_r.value <= 0) throw InputError("verify_area_bound: d_r must be positive");
    const Rat bound = Rat(1, d_r.value);
    const ValueKind dk = d_r.kind == WeightKind::exact ? ValueKind::exact : ValueKind::lower_bound;
    rep.add("integral_gap", rat_value(gap), ValueKind::exact);
    rep.add("d_r", int_value(d_r.value), dk);
    rep.add("bound", rat_value(bound), dk);
    rep.main_checks.push_back(
        make_check("integral(f_r - f_{r+1}) <= 1/d_r", rat_value(gap), "<=", rat_value(bound)));
    rep.narrative =
        d_r.kind == WeightKind::exact
            ? "exact rational area against 1/d_r"
            : "exact rational area against 1/(lower bound), the implied weaker inequality";
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// gamma and the threshold-gap checkers
// ---------------------------------------------------------------------------

GammaValue compute_gamma(const LinearCode& code, std::optional<RMParams> rm, std::size_t n0,
                         const Int& subspace_budget) {
    if (n0 < 1 || n0 > code.dimension()) throw InputError("compute_gamma: N0 outside 1..k");
    GammaValue g;
    g.N0 = n0;
    g.gamma_sq = 0;
    for (std::size_t r = 1; r + 1 <= n0; ++r) {
        SupportWeightResult dr = dr_dispatch(code, rm, Int(static_cast<unsigned long>(r)),
                                             subspace_budget);
        if (dr.kind == WeightKind::lower_bound) g.any_lower_bound = true;
        g.gamma_sq += Rat(1, dr.value);
        g.terms.push_back(std::move(dr));
    }
    g.gamma_sq.canonicalize();
    g.gamma = std::sqrt(g.gamma_sq.get_d());
    return g;
}

namespace {

// Deterministic theta from an exact weight table, bisected to `tol`.
double exact_theta(const WeightTable& table, std::size_t r, double alpha, double tol) {
    double lo = 0.0, hi = 1.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        if (exact_fr(table, r, mid) >= alpha) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return 0.5 * (lo + hi);
}

struct ThetaInterval {
    double hat = 0;
    double lo = 0;
    double hi = 1;
    bool exact = false;
};

}  // namespace

VerificationReport verify_straightshot(const LinearCode& code, std::optional<RMParams> rm,
                                       std::size_t n0, double alpha, const McSettings& mc) {
    if (alpha < 0.0 || alpha > 1.0) throw InputError("verify_straightshot: alpha outside [0,1]");
    VerificationReport rep;
    rep.claim_id = "straightshot";
    rep.inputs = {{"N", code.block_length()},
                  {"k", code.dimension()},
                  {"N0", n0},
                  {"alpha", alpha},
                  {"seed", mc.seed}};
    const GammaValue g = compute_gamma(code, rm, n0, mc.subspace_budget);
    rep.add("gamma_sq", rat_value(g.gamma_sq),
            g.any_lower_bound ? ValueKind::lower_bound : ValueKind::exact);
    rep.add("gamma", real_value(g.gamma),
            g.any_lower_bound ? ValueKind::lower_bound : ValueKind::exact);
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& t : g.terms) {
        terms.push_back({{"r", t.r.get_str()},
                         {"d_r", t.value.get_str()},
                         {"kind", t.kind == WeightKind::exact ? "exact" : "lower-bound"}});
    }
    rep.add("d_r_terms", terms, ValueKind::exact);

    rep.hypotheses.push_back(make_check("alpha + gamma <= 1", real_value(alpha + g.gamma), "<=",
                                        real_value(1.0)));
    if (alpha + g.gamma > 1.0) {
        rep.rule = "statistical";
        rep.narrative = "theorem precondition 0 <= alpha <= 1 - gamma is violated (gamma=" +
                        std::to_string(g.gamma) + "); inequality not evaluated";
        rep.finalize();
        return rep;
    }
    if (n0 == 1) {
        rep.rule = "exact";
        rep.main_checks.push_back(make_check("gamma == 0 makes both sides the same function",
                                             rat_value(g.gamma_sq), "==", rat_value(Rat(0))));
        rep.narrative = "N0 = 1: empty d_r sum, theta_1(alpha) >= theta_1(alpha) holds identically";
        rep.finalize();
        return rep;
    }

    const bool exact_mode = code.block_length() <= mc.exhaustive_budget;
    const double lhs_level = alpha + g.gamma;
    const double rhs_level = alpha;

    auto theta_at = [&](std::size_t r, double level, std::uint64_t seed) -> ThetaInterval {
        ThetaInterval ti;
        if (level >= 1.0) {  // by continuity
            ti.hat = 1.0;
            ti.lo = ti.hi = 1.0;
            ti.exact = true;
            return ti;
        }
        if (level <= 0.0) {
            ti.hat = 0.0;
            ti.lo = ti.hi = 0.0;
            ti.exact = true;
            return ti;
        }
        if (exact_mode) {
            static constexpr double kTol = 1e-9;
            const auto table = exact_weight_table(code, r, mc.exhaustive_budget);
            ti.hat = exact_theta(table, r, level, kTol);
            ti.lo = ti.hat - kTol;
            ti.hi = ti.hat + kTol;
            ti.exact = true;
            return ti;
        }
        const ThresholdEstimate est =
            estimate_theta(code, r, level, mc.trials_per_probe, mc.p_tol, seed, mc.threads);
        ti.hat = est.p_hat;
        ti.lo = est.conservative_lo;
        ti.hi = est.conservative_hi;
        return ti;
    };

    const ThetaInterval lhs = theta_at(1, lhs_level, mc.seed);
    const ThetaInterval rhs = theta_at(n0, rhs_level, mc.seed + 1);
    const ValueKind tk = exact_mode ? ValueKind::exact : ValueKind::monte_carlo;
    rep.add("theta_1(alpha+gamma)", real_value(lhs.hat), tk, lhs.hi - lhs.lo);
    rep.add("theta_N0(alpha)", real_value(rhs.hat), tk, rhs.hi - rhs.lo);
    rep.rule = "statistical";
    rep.main_checks.push_back(make_check("theta_1(alpha+gamma) >= theta_N0(alpha) - gamma (margins against)",
                                         real_value(lhs.lo), ">=", real_value(rhs.hi - g.gamma)));
    rep.violation_checks.push_back(make_check("violation beyond margins",
                                              real_value(lhs.hi), "<", real_value(rhs.lo - g.gamma)));
    rep.narrative = std::string(exact_mode ? "thresholds from the exact weight table"
                                           : "thresholds by Monte Carlo bisection") +
                    (g.any_lower_bound
                         ? "; gamma uses d_r lower bounds, so it upper-bounds the true gamma and "
                           "the checked inequality is the implied weaker one"
                         : "");
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// bit-to-block and bit-capacity checkers
// ---------------------------------------------------------------------------

namespace {

std::vector<std::size_t> spread_coords(std::size_t n, std::size_t count) {
    count = std::min(count, n);
    std::vector<std::size_t> cols;
    for (std::size_t j = 0; j < count; ++j) cols.push_back(j * n / count);
    std::sort(cols.begin(), cols.end());
    cols.erase(std::unique(cols.begin(), cols.end()), cols.end());
    return cols;
}

}  // namespace

VerificationReport verify_bittoblock(const LinearCode& code, std::optional<RMParams> rm, double p,
                                     const McSettings& mc, std::size_t max_coords) {
    if (p < 0.0 || p > 1.0) throw InputError("verify_bittoblock: p outside [0,1]");
    VerificationReport rep;
    rep.claim_id = "bittoblock";
    rep.rule = "statistical";
    const std::size_t n = code.block_length();
    const std::size_t k = code.dimension();
    rep.inputs = {{"N", n}, {"k", k}, {"p", p}, {"trials", mc.trials}, {"seed", mc.seed}};

    rep.hypotheses.push_back(make_check("N >= 10", int_value(Int(static_cast<unsigned long>(n))),
                                        ">=", int_value(Int(10))));

    const auto cols = spread_coords(n, max_coords);
    const auto bit_ests = mc_bit_errors(code, p, cols, mc.trials, mc.seed, mc.threads);
    double max_est = 0, min_est = 1, delta_hat = 0, delta_lcb = 0;
    for (const auto& e : bit_ests) {
        max_est = std::max(max_est, e.estimate);
        min_est = std::min(min_est, e.estimate);
        delta_hat = std::max(delta_hat, conf_upper(e));
        delta_lcb = std::max(delta_lcb, conf_lower(e));
    }
    rep.add("sampled_coords", cols.size(), ValueKind::exact);
    rep.add("bit_error_min", real_value(min_est), ValueKind::monte_carlo);
    rep.add("bit_error_max", real_value(max_est), ValueKind::monte_carlo);
    rep.add("delta_hat", real_value(delta_hat), ValueKind::monte_carlo,
            delta_hat - max_est);
    rep.add("delta_lcb", real_value(delta_lcb), ValueKind::monte_carlo);
    // an all-zero bit-error sample leaves delta resting on the small-count
    // guard alone; the theorem check is vacuous there
    rep.hypotheses.push_back(make_check("observed bit errors nonzero", real_value(max_est), ">",
                                        real_value(0.0)));

    // hypothesis dim C >= sqrt(delta) N: rejected only when even the most
    // favorable delta within margins violates it; the certified status with
    // the conservative delta_hat is recorded alongside
    const double sqrt_delta_n = std::sqrt(delta_hat) * static_cast<double>(n);
    const double sqrt_delta_lcb_n = std::sqrt(delta_lcb) * static_cast<double>(n);
    rep.hypotheses.push_back(make_check("dim C >= sqrt(delta) N not excluded beyond margins",
                                        real_value(static_cast<double>(k)), ">=",
                                        real_value(sqrt_delta_lcb_n)));
    rep.add("dim_hypothesis_certified_at_delta_hat",
            static_cast<double>(k) >= sqrt_delta_n, ValueKind::monte_carlo);
    std::size_t r_max = static_cast<std::size_t>(std::floor(sqrt_delta_n));
    if (r_max > k) {
        // d_r is undefined past dim C; the min over fewer r only raises Delta,
        // which the conservative reading already absorbs
        rep.add("r_range_capped_at_k", true, ValueKind::exact);
        r_max = k;
    }
    rep.add("r_max", r_max, ValueKind::monte_carlo);
    rep.hypotheses.push_back(make_check("subcode range nonempty (delta > 0)",
                                        int_value(Int(static_cast<unsigned long>(r_max))), ">=",
                                        int_value(Int(1))));
    if (rep.recheck() == Verdict::not_applicable) {
        rep.narrative = "a theorem hypothesis failed beyond margins; quantities above record the trace";
        rep.finalize();
        return rep;
    }

    // Delta = min_{r <= r_max} d_r / r, d_r exact when in budget else the RM
    // lower-bound chain (a smaller Delta only weakens the checked inequality).
    Rat delta_ratio;
    bool any_lb = false;
    bool first = true;
    for (std::size_t r = 1; r <= r_max; ++r) {
        const SupportWeightResult dr =
            dr_dispatch(code, rm, Int(static_cast<unsigned long>(r)), mc.subspace_budget);
        if (dr.kind == WeightKind::lower_bound) any_lb = true;
        Rat ratio(dr.value, Int(static_cast<unsigned long>(r)));
        ratio.canonicalize();
        if (first || ratio < delta_ratio) {
            delta_ratio = ratio;
            first = false;
        }
    }
    rep.add("Delta", rat_value(delta_ratio), any_lb ? ValueKind::lower_bound : ValueKind::exact);

    const double shift = std::sqrt(std::log2(static_cast<double>(n)) / delta_ratio.get_d());
    const double p_shifted = std::max(0.0, p - shift);
    const double rhs = std::sqrt(delta_hat) + shift;
    rep.add("shift", real_value(shift), ValueKind::exact);
    rep.add("p_shifted", real_value(p_shifted), ValueKind::exact);
    rep.add("rhs_bound", real_value(rhs), ValueKind::monte_carlo);
    if (p - shift < 0.0) {
        rep.add("p_shift_clipped", true, ValueKind::exact);
    }

    const CurveEstimate block = mc_fr(code, p_shifted, 1, mc.trials, mc.seed + 1, mc.threads);
    const double lcb = std::max(0.0, block.estimate - 4.0 * block.stderr_);
    rep.add("block_error_estimate", real_value(block.estimate), ValueKind::monte_carlo,
            4.0 * block.stderr_);
    rep.add("block_error_lcb", real_value(lcb), ValueKind::monte_carlo);

    rep.main_checks.push_back(make_check("block error lcb <= sqrt(delta) + sqrt(log N / Delta)",
                                         real_value(lcb), "<=", real_value(rhs)));
    rep.violation_checks.push_back(
        make_check("violation beyond margins", real_value(lcb), ">", real_value(rhs)));
    rep.narrative =
        std::string("delta from ") + std::to_string(cols.size()) +
        " sampled coordinates (upper confidence bounds); Delta from the d_r/r chain" +
        (any_lb ? " with RM lower bounds" : "") +
        (rep.find("r_range_capped_at_k") != nullptr
             ? "; sqrt(delta_hat) N exceeds dim C while the lower confidence end does not, so "
               "the dim hypothesis holds only within margins and r is capped at k"
             : "") +
        (rhs >= 1.0 ? "; note the right-hand side is >= 1 at this scale, the bound is vacuous "
                      "but the pipeline is exercised end to end"
                    : "");
    rep.finalize();
    return rep;
}

VerificationReport verify_bitcapacity(const LinearCode& code, const std::vector<double>& p_list,
                                      std::size_t bit, const McSettings& mc,
                                      const std::optional<ThresholdEstimate>& pstar_in) {
    VerificationReport rep;
    rep.claim_id = "bitcapacity";
    rep.rule = "statistical";
    const std::size_t n = code.block_length();
    rep.inputs = {{"N", n},
                  {"k", code.dimension()},
                  {"bit", bit},
                  {"p_list", p_list},
                  {"trials", mc.trials},
                  {"seed", mc.seed}};

    const ThresholdEstimate pstar =
        pstar_in ? *pstar_in
                 : estimate_pstar(code, bit, mc.trials_per_probe, mc.p_tol, mc.seed, mc.threads);
    rep.add("pstar_hat", real_value(pstar.p_hat), ValueKind::monte_carlo, pstar.p_tol);
    rep.add("pstar_conservative_lo", real_value(pstar.conservative_lo), ValueKind::monte_carlo);
    const double pstar_eff = pstar.p_hat - pstar.p_tol;
    rep.add("pstar_effective", real_value(pstar_eff), ValueKind::monte_carlo);

    const double log_n1 = std::log2(static_cast<double>(n - 1));
    nlohmann::json rows = nlohmann::json::array();
    std::size_t checked = 0;
    for (std::size_t idx = 0; idx < p_list.size(); ++idx) {
        const double p = p_list[idx];
        if (p > pstar.p_hat) {
            rows.push_back({{"p", p}, {"skipped", "p > pstar_hat"}});
            continue;
        }
        const CurveEstimate e = mc_bit_error(code, p, bit, mc.trials, mc.seed,
                                             mc.threads, (idx + 1) * mc.trials);
        const double lcb = std::max(0.0, e.estimate - 4.0 * e.stderr_);
        // bound inflated by the pstar tolerance: evaluated at pstar_hat - tol
        const double bound = std::exp(-std::max(0.0, pstar_eff - p) * log_n1);
        rows.push_back({{"p", p},
                        {"estimate", e.estimate},
                        {"stderr", e.stderr_},
                        {"lcb", lcb},
                        {"bound", bound}});
        rep.main_checks.push_back(make_check("bit error lcb <= exp(-(pstar-p) log2(N-1)) at p=" +
                                                 std::to_string(p),
                                             real_value(lcb), "<=", real_value(bound)));
        rep.violation_checks.push_back(make_check("violation beyond margins at p=" +
                                                      std::to_string(p),
                                                  real_value(lcb), ">", real_value(bound)));
        ++checked;
    }
    rep.add("levels", rows, ValueKind::monte_carlo);
    rep.hypotheses.push_back(make_check("at least one p <= pstar",
                                        int_value(Int(static_cast<unsigned long>(checked))), ">=",
                                        int_value(Int(1))));

    // transitivity sanity: the same curve sampled at several coordinates
    const auto cols = spread_coords(n, 8);
    if (!p_list.empty()) {
        const double p0 = p_list.front();
        if (p0 <= pstar.p_hat) {
            const auto spread = mc_bit_errors(code, p0, cols, mc.trials, mc.seed + 7, mc.threads);
            double lo = 1.0, hi = 0.0;
            for (const auto& e : spread) {
                lo = std::min(lo, e.estimate);
                hi = std::max(hi, e.estimate);
            }
            rep.add("coordinate_spread",
                    nlohmann::json{{"p", p0}, {"coords", cols.size()}, {"min", lo}, {"max", hi}},
                    ValueKind::monte_carlo);
        }
    }
    rep.narrative = "bit-error decay against the transitive-code bound; p* inflated by its "
                    "tolerance in the bound's favor; entries with p > p*_hat skipped";
    rep.finalize();
    return rep;
}

// ---------------------------------------------------------------------------
// exact bignum RM checkers
// ---------------------------------------------------------------------------

std::vector<unsigned long> rmbounds_default_ts(unsigned long n, unsigned long d) {
    const unsigned long t_min = ceil_mul_sqrt_n_log2n(5, n);
    if (t_min > d) return {};
    std::vector<unsigned long> ts;
    const unsigned long span = d - t_min;
    const unsigned long step = std::max<unsigned long>(1, (span + 19) / 20);
    for (unsigned long t = t_min; t < d; t += step) ts.push_back(t);
    ts.push_back(d);
    return ts;
}

VerificationReport verify_rmbounds(unsigned long n, unsigned long d,
                                   std::vector<unsigned long> t_samples) {
    if (d > n) throw InputError("verify_rmbounds: d > n");
    VerificationReport rep;
    rep.claim_id = "rmbounds";
    rep.inputs = {{"n", n}, {"d", d}};
    const unsigned long t_min = ceil_mul_sqrt_n_log2n(5, n);
    rep.add("t_min", int_value(Int(t_min)), ValueKind::exact);

    // d <= n/2 + sqrt(n log2 n)  <=>  (2d-n)^2 <= 4 n log2 n when 2d > n
    const bool d_ok = (2 * d <= n) || (cmp_sq_vs_nlog2n(2 * d - n, 2, n) <= 0);
    rep.hypotheses.push_back(make_check("d <= n/2 + sqrt(n log2 n)",
                                        int_value(Int(d_ok ? 0 : 1)), "==", int_value(Int(0))));
    rep.hypotheses.push_back(make_check("t range nonempty: ceil(5 sqrt(n log2 n)) <= d",
                                        int_value(Int(t_min)), "<=", int_value(Int(d))));
    if (rep.recheck() == Verdict::not_applicable) {
        rep.narrative = "lemma hypotheses do not hold for (n, d); nothing to check";
        rep.finalize();
        return rep;
    }

    if (t_samples.empty()) t_samples = rmbounds_default_ts(n, d);
    nlohmann::json rows = nlohmann::json::array();
    for (unsigned long t : t_samples) {
        if (t < t_min || t > d) throw InputError("verify_rmbounds: t outside [t_min, d]");
        const WeiPoint wp = wei_point(n, d, t);
        // support == 2^(n-t) >= 2^(n-t)
        rep.main_checks.push_back(make_check("supp(S_t) >= 2^(n-t) at t=" + std::to_string(t),
                                             int_value(wp.support), ">=",
                                             int_value(pow2(n - t))));
        // dim(S_t)^(4n^2) <= 2^((n-t)(4n^2 - t^2)), integer-power form of the
        // displayed dim bound with denominators cleared
        const Int a = Int(4) * Int(n) * Int(n);
        const Int e = (Int(n) - Int(t)) * (Int(4) * Int(n) * Int(n) - Int(t) * Int(t));
        const int sign = pow_cmp(wp.dimension, a, e);
        rep.main_checks.push_back(make_check("dim(S_t) <= 2^(n-t) * 2^(-(t^2/n - t^3/n^2)/4) at t=" +
                                                 std::to_string(t),
                                             int_value(Int(sign)), "<=", int_value(Int(0))));
        rows.push_back({{"t", t},
                        {"dim", wp.dimension.get_str()},
                        {"support", wp.support.get_str()},
                        {"exponent_cleared", e.get_str()}});
    }
    rep.add("points", rows, ValueKind::exact);
    rep.narrative = "exact big-integer checks of both displayed inequalities at " +
                    std::to_string(t_samples.size()) + " values of t";
    rep.finalize();
    return rep;
}

namespace {

// dims[t] = C(n-t, <= d-t), decreasing in t.
std::vector<Int> wei_dim_chain(unsigned long n, unsigned long d) {
    std::vector<Int> dims(d + 1);
    for (unsigned long t = 0; t <= d; ++t) dims[t] = binomial_sum(n - t, d - t);
    return dims;
}

// t* = min{t : dims[t] <= r}
unsigned long chain_tstar(const std::vector<Int>& dims, const Int& r) {
    unsigned long lo = 0, hi = dims.size() - 1;
    while (lo < hi) {
        const unsigned long mid = (lo + hi) / 2;
        if (dims[mid] <= r) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

}  // namespace

VerificationReport verify_ratiorm(unsigned long n, unsigned long d, const EpsSpec& eps) {
    if (d > n || d == 0) throw InputError("verify_ratiorm: need 1 <= d <= n");
    VerificationReport rep;
    rep.claim_id = "ratiorm";
    rep.inputs = {{"n", n}, {"d", d}, {"eps", eps.describe()}};

    // hypotheses: 6 sqrt(log2 n / n) <= eps <= 1/2 and the rmbounds d-range
    bool h_lo = false, h_hi = false;
    if (eps.kind == EpsSpec::Kind::sqrt_log_over_n) {
        h_lo = eps.mult >= 6;
        // c*sqrt(log2 n/n) <= 1/2  <=>  n^(4c^2) <= 2^n
        h_hi = pow_cmp(Int(n), Int(4) * Int(eps.mult) * Int(eps.mult), Int(n)) <= 0;
    } else {
        if (eps.value > 0) {
            const Int a = eps.value.get_num();
            const Int b = eps.value.get_den();
            // (a/b)^2 n >= 36 log2 n  <=>  n^(36 b^2) <= 2^(a^2 n)
            h_lo = pow_cmp(Int(n), Int(36) * b * b, a * a * Int(n)) <= 0;
        }
        h_hi = eps.value <= Rat(1, 2);
    }
    const bool d_ok = (2 * d <= n) || (cmp_sq_vs_nlog2n(2 * d - n, 2, n) <= 0);
    rep.hypotheses.push_back(make_check("eps >= 6 sqrt(log2 n / n)", int_value(Int(h_lo ? 0 : 1)),
                                        "==", int_value(Int(0))));
    rep.hypotheses.push_back(make_check("eps <= 1/2", int_value(Int(h_hi ? 0 : 1)), "==",
                                        int_value(Int(0))));
    rep.hypotheses.push_back(make_check("d <= n/2 + sqrt(n log2 n)", int_value(Int(d_ok ? 0 : 1)),
                                        "==", int_value(Int(0))));

    // largest m with 2^m <= 2^(n - eps n)
    unsigned long m_star = 0;
    if (eps.kind == EpsSpec::Kind::sqrt_log_over_n) {
        // m <= n - c sqrt(n log2 n)  <=>  (n-m)^2 >= c^2 n log2 n
        unsigned long lo = 0, hi = n;
        while (lo < hi) {
            const unsigned long mid = lo + (hi - lo + 1) / 2;
            if (cmp_sq_vs_nlog2n(n - mid, eps.mult, n) >= 0) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        m_star = lo;
    } else {
        // m <= n (b-a)/b
        const Int a = eps.value.get_num();
        const Int b = eps.value.get_den();
        if (a > b) throw InputError("verify_ratiorm: eps > 1");
        Int q = (Int(n) * (b - a)) / b;
        m_star = q.get_ui();
    }
    rep.add("max_power_of_two_exponent", int_value(Int(m_star)), ValueKind::exact);

    const auto dims = wei_dim_chain(n, d);
    // r samples: all powers of two up to 2^m_star plus Wei dimensions <= 2^m_star
    std::vector<Int> samples;
    for (unsigned long m = 0; m <= m_star; ++m) samples.push_back(pow2(m));
    const Int limit = pow2(m_star);
    for (unsigned long t = d + 1; t-- > 0;) {
        if (dims[t] > limit) break;  // dims grow as t shrinks
        samples.push_back(dims[t]);
    }
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    // the ratio threshold 2^(eps^2 n / 10) as pow_cmp data
    // rational eps = a/b: d_lb/r >= 2^(a^2 n/(10 b^2)) <=> r^(10b^2) <= 2^(L 10 b^2 - a^2 n)
    // symbolic eps = c sqrt(log2 n/n): threshold = n^(c^2/10):
    //   r^10 * n^(c^2) <= 2^(10 L)
    std::size_t failures = 0;
    nlohmann::json rows = nlohmann::json::array();
    for (const Int& r : samples) {
        if (r < 1 || r > dims[0]) continue;  // r must be a feasible dimension
        const unsigned long tstar = chain_tstar(dims, r);
        const unsigned long lb_exp = n - tstar;  // d_r lower bound is 2^(n - t*)
        bool holds;
        if (eps.kind == EpsSpec::Kind::sqrt_log_over_n) {
            // threshold is n^(c^2/10): check r^10 * n^(c^2) <= 2^(10 L)
            Int r10, nc;
            mpz_pow_ui(r10.get_mpz_t(), r.get_mpz_t(), 10);
            mpz_pow_ui(nc.get_mpz_t(), Int(n).get_mpz_t(), eps.mult * eps.mult);
            holds = r10 * nc <= pow2(10 * lb_exp);
        } else {
            const Int a = eps.value.get_num();
            const Int b = eps.value.get_den();
            const Int v = Int(10) * b * b;
            const Int e = Int(lb_exp) * v - a * a * Int(n);
            holds = pow_cmp(r, v, e) <= 0;
        }
        if (!holds) ++failures;
        rep.main_checks.push_back(make_check("d_r lower bound / r >= 2^(eps^2 n/10) at r with " +
                                                 std::to_string(mpz_sizeinbase(r.get_mpz_t(), 2)) +
                                                 " bits",
                                             int_value(Int(holds ? 0 : 1)), "==",
                                             int_value(Int(0))));
        rows.push_back({{"r", r.get_str()},
                        {"t_star", tstar},
                        {"d_r_lb_log2", lb_exp},
                        {"holds", holds}});
    }
    rep.add("samples", rows, ValueKind::lower_bound);
    rep.add("sample_count", samples.size(), ValueKind::exact);
    rep.narrative = "exact big-integer ratio checks through the Wei lower-bound chain (" +
                    std::to_string(samples.size() - failures) + "/" +
                    std::to_string(samples.size()) + " hold)" +
                    (rep.recheck() == Verdict::not_applicable
                         ? "; corollary hypotheses fail at this (n, d, eps), verdict reports that "
                           "while the per-r inequalities are still recorded"
                         : "");
    rep.finalize();
    return rep;
}

VerificationReport verify_rmcapacity_preconditions(unsigned long n, unsigned long d,
                                                   const EpsSpec& eps) {
    if (d > n) throw InputError("verify_rmcapacity_preconditions: d > n");
    if (eps.kind != EpsSpec::Kind::rational) {
        throw InputError("verify_rmcapacity_preconditions: rational eps required");
    }
    VerificationReport rep;
    rep.claim_id = "rmcapacity-preconditions";
    rep.inputs = {{"n", n}, {"d", d}, {"eps", eps.describe()}};
    const Rat& e = eps.value;
    const Int a = e.get_num();
    const Int b = e.get_den();

    // d in [n/2 - sqrt(n log2 n), n/2 + sqrt(n log2 n)]
    const bool d_hi = (2 * d <= n) || (cmp_sq_vs_nlog2n(2 * d - n, 2, n) <= 0);
    const bool d_lo = (2 * d >= n) || (cmp_sq_vs_nlog2n(n - 2 * d, 2, n) <= 0);
    // eps >= 20 sqrt(log2 n / n)  <=>  n^(400 b^2) <= 2^(a^2 n)
    const bool e_lo = e > 0 && pow_cmp(Int(n), Int(400) * b * b, a * a * Int(n)) <= 0;
    const bool e_hi = e <= 1;
    // 2^(-eps^2 n / 100) < eps/4  <=>  (4b)^(100 b^2) < a^(100 b^2) 2^(a^2 n)
    bool decay_ok = false;
    if (e > 0) {
        const Int vexp_z = Int(100) * b * b;
        const unsigned long vexp = vexp_z.get_ui();
        Int lhs, rhs;
        mpz_pow_ui(lhs.get_mpz_t(), Int(4 * b).get_mpz_t(), vexp);
        mpz_pow_ui(rhs.get_mpz_t(), a.get_mpz_t(), vexp);
        const Int shift = a * a * Int(n);
        mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), shift.get_ui());
        decay_ok = lhs < rhs;
    }
    // t <= 2n/3 across the invoked range (largest invoked t is d-1)
    const bool t_ok = d == 0 || 3 * (d - 1) <= 2 * n;

    auto flag = [&](const std::string& name, bool ok) {
        rep.main_checks.push_back(
            make_check(name, int_value(Int(ok ? 0 : 1)), "==", int_value(Int(0))));
    };
    flag("d >= n/2 - sqrt(n log2 n)", d_lo);
    flag("d <= n/2 + sqrt(n log2 n)", d_hi);
    flag("eps >= 20 sqrt(log2 n / n)", e_lo);
    flag("eps <= 1", e_hi);
    flag("2^(-eps^2 n/100) < eps/4", decay_ok);
    flag("t <= 2n/3 over the invoked range", t_ok);

    const bool all = d_lo && d_hi && e_lo && e_hi && decay_ok && t_ok;
    rep.narrative = all ? "all explicit hypotheses and proof-step inequalities hold (informational "
                          "only: the theorem itself is asymptotic)"
                        : "at least one explicit hypothesis fails at this scale; the asymptotic "
                          "statement is outside its regime here";
    rep.verdict = all ? Verdict::pass : Verdict::not_applicable;
    // keep recheck consistent: encode the summary as a hypothesis
    rep.hypotheses.push_back(make_check("all explicit inequalities hold",
                                        int_value(Int(all ? 0 : 1)), "==", int_value(Int(0))));
    return rep;
}

}  // namespace bect
