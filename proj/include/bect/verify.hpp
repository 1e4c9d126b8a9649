#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "bect/analysis.hpp"
#include "bect/bigmath.hpp"
#include "bect/code.hpp"

#include "json.hpp"

namespace bect {

enum class Verdict { pass, fail, inconclusive, not_applicable };
std::string to_string(Verdict v);

enum class ValueKind { exact, lower_bound, monte_carlo };
std::string to_string(ValueKind k);

struct Intermediate {
    std::string name;
    nlohmann::json value;
    ValueKind kind = ValueKind::exact;
    std::optional<double> margin;
};

// A recorded comparison that feeds the verdict. lhs/rhs are tagged values
// ("rat": "a/b", "int": decimal, "real": double) so the comparison can be
// replayed from the serialized report alone.
struct Check {
    std::string name;
    nlohmann::json lhs;
    std::string cmp;  // "<=", "<", ">=", ">", "=="
    nlohmann::json rhs;
    bool holds = false;
};

// Self-contained pass/fail record for one claim. The verdict is a pure
// function of the recorded checks:
//   - any failed hypothesis check        -> not_applicable
//   - all main checks hold               -> pass
//   - any violation check holds, or the
//     rule is "exact"                    -> fail
//   - otherwise                          -> inconclusive
struct VerificationReport {
    std::string claim_id;
    nlohmann::json inputs;
    std::vector<Intermediate> intermediates;
    std::string rule = "exact";  // or "statistical"
    std::vector<Check> hypotheses;
    std::vector<Check> main_checks;
    std::vector<Check> violation_checks;
    Verdict verdict = Verdict::inconclusive;
    std::string narrative;

    void add(std::string name, nlohmann::json value, ValueKind kind,
             std::optional<double> margin = std::nullopt);
    const Intermediate* find(const std::string& name) const;

    // Recomputes the verdict (including every comparison) from the recorded
    // checks; equals `verdict` for any report this library produced.
    Verdict recheck() const;
    void finalize();  // sets verdict = recheck()

    nlohmann::json to_json() const;
    static VerificationReport from_json(const nlohmann::json& j);
};

nlohmann::json rat_value(const Rat& q);
nlohmann::json int_value(const Int& v);
nlohmann::json real_value(double v);

struct GammaValue {
    std::size_t N0 = 0;
    std::vector<SupportWeightResult> terms;  // d_1 .. d_{N0-1}
    Rat gamma_sq;                            // exact sum of 1/d_r
    double gamma = 0;
    bool any_lower_bound = false;  // then gamma upper-bounds the true value
};

struct McSettings {
    std::uint64_t trials = 100000;
    std::uint64_t trials_per_probe = 10000;
    double p_tol = 0.005;
    std::uint64_t seed = 1;
    unsigned threads = 1;
    std::size_t exhaustive_budget = kDefaultExhaustiveBudget;
    Int subspace_budget = Int(100000000);
};

// Either an exact rational or mult * sqrt(log2(n) / n).
struct EpsSpec {
    enum class Kind { rational, sqrt_log_over_n };
    Kind kind = Kind::rational;
    Rat value;
    unsigned long mult = 0;

    static EpsSpec rational(const Rat& v);
    static EpsSpec sqrt_log_over_n(unsigned long mult);
    // "min" -> mult * sqrt(log2(n)/n); anything else parses as a decimal
    static EpsSpec parse(const std::string& text, unsigned long min_mult);
    std::string describe() const;
};

// Pr[h_{g_r} != 0] == f_r - f_{r+1} at every grid p, exact rationals.
VerificationReport verify_tz_identity(const LinearCode& code, std::size_t r,
                                      const std::vector<Rat>& p_grid,
                                      std::size_t exhaustive_budget = kDefaultExhaustiveBudget);

// nu_{g_r} >= d_r(C) (valid verbatim when d_r is a lower bound).
VerificationReport verify_nu_bound(const LinearCode& code, std::size_t r,
                                   const SupportWeightResult& d_r,
                                   std::size_t exhaustive_budget = kDefaultExhaustiveBudget);

// p * f_r'(p) == E[h_{g_r}] at every grid p, derivative from the table.
VerificationReport verify_margulis_russo(const LinearCode& code, std::size_t r,
                                         const std::vector<Rat>& p_grid,
                                         std::size_t exhaustive_budget = kDefaultExhaustiveBudget);

// integral of (f_r - f_{r+1}) <= 1/d_r, exact rationals end to end.
VerificationReport verify_area_bound(const LinearCode& code, const WeightTable& table,
                                     std::size_t r, const SupportWeightResult& d_r);

GammaValue compute_gamma(const LinearCode& code, std::optional<RMParams> rm, std::size_t n0,
                         const Int& subspace_budget = Int(100000000));

// theta_1(alpha + gamma) >= theta_N0(alpha) - gamma, thresholds estimated by
// bisection (exact-table bisection when N fits the exhaustive budget).
VerificationReport verify_straightshot(const LinearCode& code, std::optional<RMParams> rm,
                                       std::size_t n0, double alpha, const McSettings& mc);

// End-to-end bit-to-block desk check at erasure rate p: estimates the
// bit-error level delta over sampled coordinates, forms Delta from the d_r/r
// chain, then checks the block-error bound at the shifted rate.
VerificationReport verify_bittoblock(const LinearCode& code, std::optional<RMParams> rm, double p,
                                     const McSettings& mc, std::size_t max_coords = 64);

// Bit-error decay bound exp(-(p*-p) log2(N-1)) at each listed p <= p*.
VerificationReport verify_bitcapacity(const LinearCode& code, const std::vector<double>& p_list,
                                      std::size_t bit, const McSettings& mc,
                                      const std::optional<ThresholdEstimate>& pstar = std::nullopt);

// The two displayed subcode inequalities, exact bignum, over sampled t.
VerificationReport verify_rmbounds(unsigned long n, unsigned long d,
                                   std::vector<unsigned long> t_samples = {});

// Default t sampling: every ceil((d - t_min)/20) steps plus both endpoints.
std::vector<unsigned long> rmbounds_default_ts(unsigned long n, unsigned long d);

// d_r(RM(n,d))/r >= 2^(eps^2 n / 10) at sampled r via the lower-bound chain.
// Samples: powers of two plus Wei dimensions up to 2^(n - eps n). The per-r
// inequalities are recorded even when the hypotheses fail (verdict then
// not_applicable).
VerificationReport verify_ratiorm(unsigned long n, unsigned long d, const EpsSpec& eps);

// Reports which explicit hypotheses / proof-step inequalities hold; rational
// eps only.
VerificationReport verify_rmcapacity_preconditions(unsigned long n, unsigned long d,
                                                   const EpsSpec& eps);

}  // namespace bect
