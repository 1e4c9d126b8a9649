#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "bect/bigmath.hpp"
#include "bect/code.hpp"
#include "bect/erasure.hpp"

#include "json.hpp"

namespace bect {

// A[r][w] = #{x : |x| = w, dim S_C(x) >= r}; the exact representation of the
// curves f_r(p) = sum_w A[r][w] p^w (1-p)^(N-w).
struct WeightTable {
    std::size_t N = 0;
    std::size_t rmax = 0;
    std::vector<std::vector<Int>> A;  // (rmax+1) x (N+1)

    nlohmann::json to_json() const;
    static WeightTable from_json(const nlohmann::json& j);
};

WeightTable exact_weight_table(const LinearCode& code, std::size_t rmax,
                               std::size_t exhaustive_budget = kDefaultExhaustiveBudget);

// sum_w counts[w] p^w (1-p)^(N-w)
double eval_weight_poly(const std::vector<Int>& counts, std::size_t N, double p);
Rat eval_weight_poly(const std::vector<Int>& counts, std::size_t N, const Rat& p);

double exact_fr(const WeightTable& table, std::size_t r, double p);
Rat exact_fr(const WeightTable& table, std::size_t r, const Rat& p);

// d/dp f_r, computed from the table coefficients (no finite differences).
double exact_fr_derivative(const WeightTable& table, std::size_t r, double p);
Rat exact_fr_derivative(const WeightTable& table, std::size_t r, const Rat& p);

// Exact integral of f_r - f_(r+1) over p in [0,1], as a reduced rational,
// using int p^w (1-p)^(N-w) dp = 1 / ((N+1) C(N,w)). Rows beyond rmax are
// zero, so r = rmax is allowed when the table covers the full dimension.
Rat exact_integral_gap(const WeightTable& table, std::size_t r);

// Exhaustive statistics of h_{g_r}, grouped by pattern weight.
struct HWeightCounts {
    std::size_t N = 0;
    std::vector<Int> nonzero;  // #{|x| = w : h_{g_r}(x) != 0}
    std::vector<Int> total;    // sum over |x| = w of h_{g_r}(x)
};
HWeightCounts h_weight_counts(const LinearCode& code, std::size_t r,
                              std::size_t exhaustive_budget = kDefaultExhaustiveBudget);

double exact_h_expectation(const LinearCode& code, std::size_t r, double p,
                           std::size_t exhaustive_budget = kDefaultExhaustiveBudget);
Rat exact_h_expectation(const LinearCode& code, std::size_t r, const Rat& p,
                        std::size_t exhaustive_budget = kDefaultExhaustiveBudget);

struct CurveEstimate {
    double p = 0;
    std::size_t r = 0;  // dimension threshold, or the bit index for bit curves
    std::uint64_t trials = 0;
    std::uint64_t successes = 0;
    double estimate = 0;
    double stderr_ = 0;
    std::uint64_t seed = 0;
};

// Bernoulli mean of [dim S_C(x) >= r] over seeded independent patterns.
// Trials are numbered trial_base .. trial_base+trials-1 so callers can carve
// disjoint substreams out of one seed.
CurveEstimate mc_fr(const LinearCode& code, double p, std::size_t r, std::uint64_t trials,
                    std::uint64_t seed, unsigned threads = 1, std::uint64_t trial_base = 0);

CurveEstimate mc_bit_error(const LinearCode& code, double p, std::size_t i, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads = 1, std::uint64_t trial_base = 0);

// One pass shared across up to 64 coordinates.
std::vector<CurveEstimate> mc_bit_errors(const LinearCode& code, double p,
                                         const std::vector<std::size_t>& cols,
                                         std::uint64_t trials, std::uint64_t seed,
                                         unsigned threads = 1, std::uint64_t trial_base = 0);

struct ThresholdEstimate {
    double alpha = 0;
    double p_hat = 0;
    double p_tol = 0;
    double bracket_lo = 0;  // final bisection bracket
    double bracket_hi = 1;
    // 4-sigma-safe enclosure derived from all probes (see note)
    double conservative_lo = 0;
    double conservative_hi = 1;
    std::uint64_t trials_per_probe = 0;
    std::uint64_t seed = 0;
    std::size_t probes = 0;
    std::string note;
};

// Bisection of the monotone map p -> f_r(p) to level alpha. Flat stretches
// resolve toward the smaller p: an estimate equal to alpha moves the upper
// bracket down.
ThresholdEstimate estimate_theta(const LinearCode& code, std::size_t r, double alpha,
                                 std::uint64_t trials_per_probe, double p_tol,
                                 std::uint64_t seed, unsigned threads = 1);

// Noise level where the bit-error probability of coordinate i reaches 1/2.
ThresholdEstimate estimate_pstar(const LinearCode& code, std::size_t i,
                                 std::uint64_t trials_per_probe, double p_tol,
                                 std::uint64_t seed, unsigned threads = 1);

struct WidthEstimate {
    ThresholdEstimate lo_point;
    ThresholdEstimate hi_point;
    double width = 0;
    double width_lo = 0;  // conservative bounds on the true width
    double width_hi = 0;
};

WidthEstimate transition_width(const LinearCode& code, std::size_t r, double lo_level,
                               double hi_level, std::uint64_t trials_per_probe, double p_tol,
                               std::uint64_t seed, unsigned threads = 1);

// Conservative one-sided confidence offsets: 4 standard errors plus a 4/n
// small-count guard, clamped to [0, 1].
double conf_lower(const CurveEstimate& e);
double conf_upper(const CurveEstimate& e);

}  // namespace bect
