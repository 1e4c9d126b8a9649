#include "bect/analysis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <thread>

#include "bect/errors.hpp"

namespace bect {

nlohmann::json WeightTable::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& row : A) {
        nlohmann::json r = nlohmann::json::array();
        for (const auto& v : row) r.push_back(v.get_str());
        rows.push_back(std::move(r));
    }
    return nlohmann::json{{"N", N}, {"rmax", rmax}, {"A", std::move(rows)}};
}

WeightTable WeightTable::from_json(const nlohmann::json& j) {
    WeightTable t;
    t.N = j.at("N").get<std::size_t>();
    t.rmax = j.at("rmax").get<std::size_t>();
    for (const auto& row : j.at("A")) {
        std::vector<Int> r;
        for (const auto& v : row) r.emplace_back(v.get<std::string>());
        if (r.size() != t.N + 1) throw InputError("weight table row has wrong length");
        t.A.push_back(std::move(r));
    }
    if (t.A.size() != t.rmax + 1) throw InputError("weight table has wrong row count");
    return t;
}

WeightTable exact_weight_table(const LinearCode& code, std::size_t rmax,
                               std::size_t exhaustive_budget) {
    const std::size_t n = code.block_length();
    if (n > exhaustive_budget || n > 63) {
        throw ResourceLimitError("exact_weight_table: 2^" + std::to_string(n) +
                                 " patterns exceed budget 2^" + std::to_string(exhaustive_budget));
    }
    const std::size_t k = code.dimension();
    // counts[d][w] = #{x : |x| = w, dim S_C(x) = d}
    std::vector<std::vector<std::uint64_t>> counts(k + 1, std::vector<std::uint64_t>(n + 1, 0));
    CoverSolver solver(code, CoverSolver::Track::none);
    std::uint64_t words[1];
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        words[0] = bits;
        const std::size_t w = static_cast<std::size_t>(std::popcount(bits));
        const auto out = solver.solve(std::span<const std::uint64_t>(words, 1), w);
        ++counts[out.dim][w];
    }
    WeightTable table;
    table.N = n;
    table.rmax = rmax;
    table.A.assign(rmax + 1, std::vector<Int>(n + 1, 0));
    for (std::size_t r = 0; r <= rmax; ++r) {
        for (std::size_t w = 0; w <= n; ++w) {
            std::uint64_t acc = 0;
            for (std::size_t d = std::min(r, k + 1); d <= k; ++d) acc += counts[d][w];
            table.A[r][w] = Int(static_cast<unsigned long>(r > k ? 0 : acc));
        }
    }
    return table;
}

double eval_weight_poly(const std::vector<Int>& counts, std::size_t N, double p) {
    // Horner-free: powers accumulated from both ends, stable for p in [0,1].
    double sum = 0;
    for (std::size_t w = 0; w <= N; ++w) {
        if (counts[w] == 0) continue;
        const double term = counts[w].get_d() * std::pow(p, static_cast<double>(w)) *
                            std::pow(1.0 - p, static_cast<double>(N - w));
        sum += term;
    }
    return sum;
}

Rat eval_weight_poly(const std::vector<Int>& counts, std::size_t N, const Rat& p) {
    const Rat q = Rat(1) - p;
    Rat sum = 0;
    // powers by running product: p^w and (1-p)^(N-w)
    std::vector<Rat> pw(N + 1), qw(N + 1);
    pw[0] = 1;
    qw[0] = 1;
    for (std::size_t i = 1; i <= N; ++i) {
        pw[i] = pw[i - 1] * p;
        qw[i] = qw[i - 1] * q;
    }
    for (std::size_t w = 0; w <= N; ++w) {
        if (counts[w] == 0) continue;
        sum += Rat(counts[w]) * pw[w] * qw[N - w];
    }
    sum.canonicalize();
    return sum;
}

namespace {

const std::vector<Int>& table_row(const WeightTable& t, std::size_t r) {
    if (r >= t.A.size()) throw InputError("weight table row " + std::to_string(r) + " > rmax");
    return t.A[r];
}

}  // namespace

double exact_fr(const WeightTable& table, std::size_t r, double p) {
    if (p < 0 || p > 1) throw InputError("exact_fr: p outside [0,1]");
    return eval_weight_poly(table_row(table, r), table.N, p);
}

Rat exact_fr(const WeightTable& table, std::size_t r, const Rat& p) {
    return eval_weight_poly(table_row(table, r), table.N, p);
}

double exact_fr_derivative(const WeightTable& table, std::size_t r, double p) {
    const auto& row = table_row(table, r);
    const std::size_t N = table.N;
    double sum = 0;
    for (std::size_t w = 0; w <= N; ++w) {
        if (row[w] == 0) continue;
        const double a = row[w].get_d();
        double term = 0;
        if (w > 0) {
            term += static_cast<double>(w) * std::pow(p, static_cast<double>(w - 1)) *
                    std::pow(1.0 - p, static_cast<double>(N - w));
        }
        if (N - w > 0) {
            term -= static_cast<double>(N - w) * std::pow(p, static_cast<double>(w)) *
                    std::pow(1.0 - p, static_cast<double>(N - w - 1));
        }
        sum += a * term;
    }
    return sum;
}

Rat exact_fr_derivative(const WeightTable& table, std::size_t r, const Rat& p) {
    const auto& row = table_row(table, r);
    const std::size_t N = table.N;
    const Rat q = Rat(1) - p;
    std::vector<Rat> pw(N + 1), qw(N + 1);
    pw[0] = 1;
    qw[0] = 1;
    for (std::size_t i = 1; i <= N; ++i) {
        pw[i] = pw[i - 1] * p;
        qw[i] = qw[i - 1] * q;
    }
    Rat sum = 0;
    for (std::size_t w = 0; w <= N; ++w) {
        if (row[w] == 0) continue;
        Rat term = 0;
        if (w > 0) term += Rat(static_cast<unsigned long>(w)) * pw[w - 1] * qw[N - w];
        if (N - w > 0) term -= Rat(static_cast<unsigned long>(N - w)) * pw[w] * qw[N - w - 1];
        sum += Rat(row[w]) * term;
    }
    sum.canonicalize();
    return sum;
}

Rat exact_integral_gap(const WeightTable& table, std::size_t r) {
    const auto& hi = table_row(table, r);
    // beyond rmax the curve is identically zero only if the table says so;
    // callers build tables with rmax >= dim C + 1 when they need r = dim C.
    const std::vector<Int> zeros(table.N + 1, 0);
    const auto& lo = (r + 1 < table.A.size()) ? table.A[r + 1] : zeros;
    Rat sum = 0;
    for (std::size_t w = 0; w <= table.N; ++w) {
        const Int diff = hi[w] - lo[w];
        if (diff == 0) continue;
        const Int denom = Int(static_cast<unsigned long>(table.N + 1)) * binomial(table.N, w);
        Rat term(diff, denom);
        term.canonicalize();
        sum += term;
    }
    sum.canonicalize();
    return sum;
}

HWeightCounts h_weight_counts(const LinearCode& code, std::size_t r,
                              std::size_t exhaustive_budget) {
    const std::size_t n = code.block_length();
    if (n > exhaustive_budget || n > 63) {
        throw ResourceLimitError("h_weight_counts: 2^" + std::to_string(n) +
                                 " patterns exceed budget 2^" + std::to_string(exhaustive_budget));
    }
    if (r < 1) throw InputError("h_weight_counts: r >= 1 required");
    HWeightCounts out;
    out.N = n;
    out.nonzero.assign(n + 1, 0);
    out.total.assign(n + 1, 0);
    CoverSolver solver(code, CoverSolver::Track::support_size);
    std::uint64_t words[1];
    for (std::uint64_t bits = 0; bits < (std::uint64_t{1} << n); ++bits) {
        words[0] = bits;
        const std::size_t w = static_cast<std::size_t>(std::popcount(bits));
        const auto res = solver.solve(std::span<const std::uint64_t>(words, 1), w);
        if (res.dim == r && res.support_size != 0) {
            out.nonzero[w] += 1;
            out.total[w] += static_cast<unsigned long>(res.support_size);
        }
    }
    return out;
}

double exact_h_expectation(const LinearCode& code, std::size_t r, double p,
                           std::size_t exhaustive_budget) {
    const auto counts = h_weight_counts(code, r, exhaustive_budget);
    return eval_weight_poly(counts.total, counts.N, p);
}

Rat exact_h_expectation(const LinearCode& code, std::size_t r, const Rat& p,
                        std::size_t exhaustive_budget) {
    const auto counts = h_weight_counts(code, r, exhaustive_budget);
    return eval_weight_poly(counts.total, counts.N, p);
}

namespace {

std::size_t fill_pattern(std::vector<std::uint64_t>& buf, std::size_t n, double p,
                         std::uint64_t seed, std::uint64_t trial) {
    std::fill(buf.begin(), buf.end(), 0);
    TrialRng rng(seed, trial);
    std::size_t weight = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (rng.next_unit() < p) {
            buf[i / 64] |= std::uint64_t{1} << (i % 64);
            ++weight;
        }
    }
    return weight;
}

double bernoulli_stderr(double est, std::uint64_t trials) {
    return trials == 0 ? 0.0 : std::sqrt(est * (1.0 - est) / static_cast<double>(trials));
}

// Runs fn(trial) over [base, base+trials) on `threads` workers; fn returns the
// per-trial success increment. Deterministic: the sum does not depend on the
// partition.
template <typename PerThreadState, typename MakeState, typename Trial>
std::uint64_t run_trials(std::uint64_t trials, std::uint64_t base, unsigned threads,
                         MakeState make_state, Trial trial_fn) {
    threads = std::max(1u, threads);
    if (threads == 1 || trials < 2 * threads) {
        PerThreadState state = make_state();
        std::uint64_t successes = 0;
        for (std::uint64_t t = 0; t < trials; ++t) successes += trial_fn(state, base + t);
        return successes;
    }
    std::vector<std::uint64_t> partial(threads, 0);
    std::vector<std::thread> pool;
    const std::uint64_t chunk = trials / threads;
    for (unsigned w = 0; w < threads; ++w) {
        const std::uint64_t t0 = base + w * chunk;
        const std::uint64_t t1 = (w + 1 == threads) ? base + trials : t0 + chunk;
        pool.emplace_back([&, w, t0, t1] {
            PerThreadState state = make_state();
            std::uint64_t s = 0;
            for (std::uint64_t t = t0; t < t1; ++t) s += trial_fn(state, t);
            partial[w] = s;
        });
    }
    for (auto& th : pool) th.join();
    std::uint64_t successes = 0;
    for (auto s : partial) successes += s;
    return successes;
}

}  // namespace

CurveEstimate mc_fr(const LinearCode& code, double p, std::size_t r, std::uint64_t trials,
                    std::uint64_t seed, unsigned threads, std::uint64_t trial_base) {
    if (trials < 1) throw InputError("mc_fr: trials >= 1 required");
    if (p < 0 || p > 1) throw InputError("mc_fr: p outside [0,1]");
    const std::size_t n = code.block_length();
    const std::size_t words = (n + 63) / 64;
    struct State {
        CoverSolver solver;
        std::vector<std::uint64_t> buf;
    };
    const std::uint64_t successes = run_trials<State>(
        trials, trial_base, threads,
        [&] { return State{CoverSolver(code, CoverSolver::Track::none), std::vector<std::uint64_t>(words)}; },
        [&](State& st, std::uint64_t t) -> std::uint64_t {
            const std::size_t w = fill_pattern(st.buf, n, p, seed, t);
            return st.solver.dim_at_least(st.buf, w, r) ? 1 : 0;
        });
    CurveEstimate e;
    e.p = p;
    e.r = r;
    e.trials = trials;
    e.successes = successes;
    e.estimate = static_cast<double>(successes) / static_cast<double>(trials);
    e.stderr_ = bernoulli_stderr(e.estimate, trials);
    e.seed = seed;
    return e;
}

std::vector<CurveEstimate> mc_bit_errors(const LinearCode& code, double p,
                                         const std::vector<std::size_t>& cols,
                                         std::uint64_t trials, std::uint64_t seed,
                                         unsigned threads, std::uint64_t trial_base) {
    if (trials < 1) throw InputError("mc_bit_errors: trials >= 1 required");
    if (p < 0 || p > 1) throw InputError("mc_bit_errors: p outside [0,1]");
    if (cols.empty() || cols.size() > 64) throw InputError("mc_bit_errors: 1..64 columns");
    for (std::size_t c : cols) {
        if (c >= code.block_length()) throw InputError("mc_bit_errors: index out of range");
    }
    const std::size_t n = code.block_length();
    const std::size_t words = (n + 63) / 64;

    struct State {
        CoverSolver solver;
        std::vector<std::uint64_t> buf;
        std::vector<std::uint64_t> col_hits;
    };
    std::vector<std::uint64_t> totals(cols.size(), 0);
    unsigned nthreads = std::max(1u, threads);
    std::vector<std::vector<std::uint64_t>> partials;
    // run_trials aggregates a single counter; bit curves need one per column,
    // so run the pool inline here.
    if (nthreads == 1 || trials < 2 * nthreads) {
        State st{CoverSolver(code, CoverSolver::Track::columns, cols),
                 std::vector<std::uint64_t>(words), std::vector<std::uint64_t>(cols.size(), 0)};
        for (std::uint64_t t = 0; t < trials; ++t) {
            const std::size_t w = fill_pattern(st.buf, n, p, seed, trial_base + t);
            const auto out = st.solver.solve(st.buf, w);
            for (std::size_t b = 0; b < cols.size(); ++b) {
                st.col_hits[b] += (out.unrecoverable >> b) & 1u;
            }
        }
        totals = st.col_hits;
    } else {
        partials.assign(nthreads, std::vector<std::uint64_t>(cols.size(), 0));
        std::vector<std::thread> pool;
        const std::uint64_t chunk = trials / nthreads;
        for (unsigned wk = 0; wk < nthreads; ++wk) {
            const std::uint64_t t0 = trial_base + wk * chunk;
            const std::uint64_t t1 = (wk + 1 == nthreads) ? trial_base + trials : t0 + chunk;
            pool.emplace_back([&, wk, t0, t1] {
                State st{CoverSolver(code, CoverSolver::Track::columns, cols),
                         std::vector<std::uint64_t>(words),
                         std::vector<std::uint64_t>(cols.size(), 0)};
                for (std::uint64_t t = t0; t < t1; ++t) {
                    const std::size_t w = fill_pattern(st.buf, n, p, seed, t);
                    const auto out = st.solver.solve(st.buf, w);
                    for (std::size_t b = 0; b < cols.size(); ++b) {
                        st.col_hits[b] += (out.unrecoverable >> b) & 1u;
                    }
                }
                partials[wk] = st.col_hits;
            });
        }
        for (auto& th : pool) th.join();
        for (const auto& part : partials) {
            for (std::size_t b = 0; b < cols.size(); ++b) totals[b] += part[b];
        }
    }

    std::vector<CurveEstimate> out;
    for (std::size_t b = 0; b < cols.size(); ++b) {
        CurveEstimate e;
        e.p = p;
        e.r = cols[b];
        e.trials = trials;
        e.successes = totals[b];
        e.estimate = static_cast<double>(totals[b]) / static_cast<double>(trials);
        e.stderr_ = bernoulli_stderr(e.estimate, trials);
        e.seed = seed;
        out.push_back(e);
    }
    return out;
}

CurveEstimate mc_bit_error(const LinearCode& code, double p, std::size_t i, std::uint64_t trials,
                           std::uint64_t seed, unsigned threads, std::uint64_t trial_base) {
    return mc_bit_errors(code, p, {i}, trials, seed, threads, trial_base).front();
}

double conf_lower(const CurveEstimate& e) {
    const double guard = e.trials == 0 ? 0.0 : 4.0 / static_cast<double>(e.trials);
    return std::max(0.0, e.estimate - 4.0 * e.stderr_ - guard);
}

double conf_upper(const CurveEstimate& e) {
    const double guard = e.trials == 0 ? 0.0 : 4.0 / static_cast<double>(e.trials);
    return std::min(1.0, e.estimate + 4.0 * e.stderr_ + guard);
}

namespace {

// Shared bisection driver: probe(p, trial_base) must be monotone in p in
// distribution. Flat estimates resolve toward smaller p.
ThresholdEstimate bisect_threshold(double alpha, std::uint64_t trials_per_probe, double p_tol,
                                   std::uint64_t seed,
                                   const std::function<CurveEstimate(double, std::uint64_t)>& probe,
                                   std::string note) {
    if (!(alpha > 0.0 && alpha < 1.0)) throw InputError("threshold level must be in (0,1)");
    if (p_tol <= 0) throw InputError("p tolerance must be positive");
    ThresholdEstimate est;
    est.alpha = alpha;
    est.p_tol = p_tol;
    est.trials_per_probe = trials_per_probe;
    est.seed = seed;
    double lo = 0.0, hi = 1.0;
    double cons_lo = 0.0, cons_hi = 1.0;
    std::size_t idx = 0;
    while (hi - lo > p_tol) {
        const double mid = 0.5 * (lo + hi);
        const CurveEstimate e = probe(mid, idx * trials_per_probe);
        ++idx;
        if (e.estimate >= alpha) {
            hi = mid;
        } else {
            lo = mid;
        }
        if (conf_upper(e) < alpha) cons_lo = std::max(cons_lo, mid);
        if (conf_lower(e) > alpha) cons_hi = std::min(cons_hi, mid);
    }
    est.bracket_lo = lo;
    est.bracket_hi = hi;
    est.p_hat = 0.5 * (lo + hi);
    est.conservative_lo = cons_lo;
    est.conservative_hi = cons_hi;
    est.probes = idx;
    est.note = std::move(note);
    return est;
}

}  // namespace

ThresholdEstimate estimate_theta(const LinearCode& code, std::size_t r, double alpha,
                                 std::uint64_t trials_per_probe, double p_tol,
                                 std::uint64_t seed, unsigned threads) {
    if (r < 1 || r > code.dimension()) throw InputError("estimate_theta: r outside 1..k");
    auto probe = [&](double p, std::uint64_t base) {
        return mc_fr(code, p, r, trials_per_probe, seed, threads, base);
    };
    return bisect_threshold(alpha, trials_per_probe, p_tol, seed, probe,
                            "bisection of f_" + std::to_string(r) +
                                "; ties resolve toward smaller p; conservative bounds apply "
                                "4*stderr + 4/trials at every probe");
}

ThresholdEstimate estimate_pstar(const LinearCode& code, std::size_t i,
                                 std::uint64_t trials_per_probe, double p_tol,
                                 std::uint64_t seed, unsigned threads) {
    if (i >= code.block_length()) throw InputError("estimate_pstar: index out of range");
    bool in_support = false;
    for (std::size_t row = 0; row < code.dimension(); ++row) {
        if (code.generator().get(row, i)) {
            in_support = true;
            break;
        }
    }
    if (!in_support) {
        throw InputError("estimate_pstar: bit " + std::to_string(i) +
                         " is outside supp(C); its bit error is identically 0");
    }
    auto probe = [&](double p, std::uint64_t base) {
        return mc_bit_error(code, p, i, trials_per_probe, seed, threads, base);
    };
    return bisect_threshold(0.5, trials_per_probe, p_tol, seed, probe,
                            "bisection of the bit-error curve at coordinate " + std::to_string(i));
}

WidthEstimate transition_width(const LinearCode& code, std::size_t r, double lo_level,
                               double hi_level, std::uint64_t trials_per_probe, double p_tol,
                               std::uint64_t seed, unsigned threads) {
    if (!(0.0 < lo_level && lo_level <= hi_level && hi_level < 1.0)) {
        throw InputError("transition_width: need 0 < lo <= hi < 1");
    }
    WidthEstimate w;
    w.lo_point = estimate_theta(code, r, lo_level, trials_per_probe, p_tol, seed, threads);
    // the second bisection draws from seed+1 so its probes are independent
    w.hi_point = (hi_level == lo_level)
                     ? w.lo_point
                     : estimate_theta(code, r, hi_level, trials_per_probe, p_tol, seed + 1, threads);
    w.width = w.hi_point.p_hat - w.lo_point.p_hat;
    w.width_lo = w.hi_point.conservative_lo - w.lo_point.conservative_hi;
    w.width_hi = w.hi_point.conservative_hi - w.lo_point.conservative_lo;
    return w;
}

}  // namespace bect
