// becthresh: covered-subcode analysis, threshold curves, and executable
// checks for linear codes on the binary erasure channel.

#include <charconv>
#include <chrono>
#include <functional>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bect/analysis.hpp"
#include "bect/bigmath.hpp"
#include "bect/code.hpp"
#include "bect/erasure.hpp"
#include "bect/errors.hpp"
#include "bect/subspaces.hpp"
#include "bect/verify.hpp"

using nlohmann::json;
using namespace bect;

namespace {

constexpr const char* kVersion = "becthresh 0.1.0";

struct GlobalOpts {
    std::uint64_t seed = 1;
    std::uint64_t trials = 100000;
    unsigned threads = 1;
    std::size_t budget_exhaustive = kDefaultExhaustiveBudget;
    double budget_subspaces = 1e8;
    std::string out;
    bool as_json = false;

    Int subspace_budget() const { return Int(budget_subspaces); }
    McSettings mc() const {
        McSettings m;
        m.trials = trials;
        m.seed = seed;
        m.threads = threads;
        m.exhaustive_budget = budget_exhaustive;
        m.subspace_budget = subspace_budget();
        return m;
    }
};

std::string timestamp() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

json run_record(const std::string& command, const json& parameters, const GlobalOpts& g) {
    return json{{"command", command},
                {"parameters", parameters},
                {"seed", g.seed},
                {"timestamp", timestamp()},
                {"tool_version", kVersion},
                {"outputs", g.out.empty() ? json::array() : json::array({g.out})}};
}

void emit_text(const GlobalOpts& g, const std::string& text) {
    if (g.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(g.out);
    if (!f) throw InputError("cannot open " + g.out + " for writing");
    f << text;
}

void emit_json(const GlobalOpts& g, const json& j) { emit_text(g, j.dump(2) + "\n"); }

std::string fmt(double v) {
    char buf[40];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip
    return std::string(buf, res.ptr);
}

// "a:b:s" inclusive with exact rational stepping; a bare decimal is one point
std::vector<Rat> parse_grid(const std::string& text) {
    std::vector<Rat> grid;
    const auto c1 = text.find(':');
    if (c1 == std::string::npos) {
        grid.push_back(parse_decimal(text));
        return grid;
    }
    const auto c2 = text.find(':', c1 + 1);
    if (c2 == std::string::npos) throw InputError("grid must be start:stop:step");
    const Rat start = parse_decimal(text.substr(0, c1));
    const Rat stop = parse_decimal(text.substr(c1 + 1, c2 - c1 - 1));
    const Rat step = parse_decimal(text.substr(c2 + 1));
    if (step <= 0) throw InputError("grid step must be positive");
    for (Rat p = start; p <= stop; p += step) {
        Rat q = p;
        q.canonicalize();
        grid.push_back(q);
    }
    return grid;
}

struct LoadedCode {
    LinearCode code;
    std::optional<RMParams> rm;
};

// `code rm` stamps "# rm <n> <d>" so downstream commands can use the
// lower-bound chain on codes loaded from disk.
LoadedCode load_with_params(const std::string& path) {
    std::optional<RMParams> rm;
    {
        std::ifstream probe(path);
        if (!probe) throw InputError("cannot open " + path);
        std::string line;
        while (std::getline(probe, line)) {
            if (line.empty()) continue;
            if (line[0] != '#') break;
            std::istringstream is(line.substr(1));
            std::string tag;
            std::size_t n = 0, d = 0;
            if (is >> tag >> n >> d && tag == "rm") rm = RMParams{n, d};
        }
    }
    return LoadedCode{load_code(std::filesystem::path(path)), rm};
}

// Builds the code from --code or --n/--d. RM params are kept when known.
struct CodeArgs {
    std::string path;
    long long n = -1;
    long long d = -1;

    void attach(CLI::App* cmd) {
        auto* p = cmd->add_option("--code", path, "generator matrix file");
        auto* n_opt = cmd->add_option("--n", n, "Reed-Muller variable count");
        auto* d_opt = cmd->add_option("--d", d, "Reed-Muller degree");
        n_opt->needs(d_opt);
        d_opt->needs(n_opt);
        p->excludes(n_opt);
    }

    LoadedCode resolve() const {
        if (!path.empty()) return load_with_params(path);
        if (n >= 0 && d >= 0) {
            RMParams params{static_cast<std::size_t>(n), static_cast<std::size_t>(d)};
            return LoadedCode{rm_code(params), params};
        }
        throw InputError("give either --code FILE or --n/--d");
    }
};

std::string curve_csv_header(const json& record) {
    std::string s = "# run: " + record.dump() + "\n";
    s += "p,r,estimate,stderr,trials,seed\n";
    return s;
}

std::string report_text(const VerificationReport& rep) {
    std::string s = rep.claim_id + ": " + to_string(rep.verdict) + "\n";
    s += "  " + rep.narrative + "\n";
    auto dump_checks = [&](const char* label, const std::vector<Check>& cs) {
        for (const auto& c : cs) {
            s += std::string("  [") + label + "] " + (c.holds ? "ok  " : "FAIL") + " " + c.name + "\n";
        }
    };
    dump_checks("hyp", rep.hypotheses);
    dump_checks("chk", rep.main_checks);
    return s;
}

int finish_report(const GlobalOpts& g, const std::string& command, const json& params,
                  const VerificationReport& rep) {
    json j = rep.to_json();
    j["run"] = run_record(command, params, g);
    if (g.as_json || !g.out.empty()) {
        emit_json(g, j);
        if (!g.out.empty()) std::cout << report_text(rep);
    } else {
        emit_text(g, report_text(rep));
    }
    return rep.verdict == Verdict::fail ? 1 : 0;
}

int finish_reports(const GlobalOpts& g, const std::string& command, const json& params,
                   const std::vector<VerificationReport>& reps) {
    json arr = json::array();
    bool failed = false;
    std::string text;
    for (const auto& rep : reps) {
        arr.push_back(rep.to_json());
        text += report_text(rep);
        failed = failed || rep.verdict == Verdict::fail;
    }
    json out{{"run", run_record(command, params, g)}, {"reports", std::move(arr)}};
    if (g.as_json || !g.out.empty()) {
        emit_json(g, out);
        if (!g.out.empty()) std::cout << text;
    } else {
        emit_text(g, text);
    }
    return failed ? 1 : 0;
}

json estimate_json(const CurveEstimate& e) {
    return json{{"p", e.p},          {"r", e.r},           {"trials", e.trials},
                {"successes", e.successes}, {"estimate", e.estimate}, {"stderr", e.stderr_},
                {"seed", e.seed}};
}

json threshold_json(const ThresholdEstimate& t) {
    return json{{"alpha", t.alpha},
                {"p_hat", t.p_hat},
                {"p_tol", t.p_tol},
                {"bracket_lo", t.bracket_lo},
                {"bracket_hi", t.bracket_hi},
                {"conservative_lo", t.conservative_lo},
                {"conservative_hi", t.conservative_hi},
                {"trials_per_probe", t.trials_per_probe},
                {"probes", t.probes},
                {"seed", t.seed},
                {"confidence_note", t.note}};
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"bit-to-block erasure threshold toolkit"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    GlobalOpts g;
    app.add_option("--seed", g.seed, "master RNG seed")->capture_default_str();
    app.add_option("--trials", g.trials, "Monte Carlo trials")->capture_default_str();
    app.add_option("--threads", g.threads, "worker cap")->capture_default_str();
    app.add_option("--budget-exhaustive", g.budget_exhaustive,
                   "max N for 2^N exhaustive scans")->capture_default_str();
    app.add_option("--budget-subspaces", g.budget_subspaces,
                   "max subspace enumeration count")->capture_default_str();
    app.add_option("--out", g.out, "write the result to this file");
    app.add_flag("--json", g.as_json, "machine-readable output");

    int exit_code = 0;
    // ---- code ----
    auto* code_cmd = app.add_subcommand("code", "construct and inspect generator matrices");
    code_cmd->require_subcommand(1);
    {
        auto* rm = code_cmd->add_subcommand("rm", "write a Reed-Muller generator");
        auto n = std::make_shared<std::size_t>(0);
        auto d = std::make_shared<std::size_t>(0);
        rm->add_option("--n", *n, "variables")->required();
        rm->add_option("--d", *d, "degree")->required();
        rm->callback([&, n, d] {
            const auto code = rm_code({*n, *d});
            std::ostringstream out;
            out << "# rm " << *n << ' ' << *d << "\n";
            out << "# run: " << run_record("code rm", {{"n", *n}, {"d", *d}}, g).dump() << "\n";
            save_code(code, out);
            emit_text(g, out.str());
        });

        auto* info = code_cmd->add_subcommand("info", "print N, k and the brute-force dmin");
        auto info_path = std::make_shared<std::string>();
        info->add_option("file", *info_path, "generator matrix file")->required();
        info->callback([&, info_path] {
            const auto loaded = load_with_params(*info_path);
            std::string dmin;
            try {
                dmin = std::to_string(min_distance_bruteforce(loaded.code));
            } catch (const ResourceLimitError&) {
                dmin = "?";
            }
            std::ostringstream out;
            out << "N=" << loaded.code.block_length() << " k=" << loaded.code.dimension()
                << " dmin=" << dmin << "\n";
            emit_text(g, out.str());
        });

        auto* check = code_cmd->add_subcommand("load-check", "validate a generator matrix file");
        auto check_path = std::make_shared<std::string>();
        check->add_option("file", *check_path, "generator matrix file")->required();
        check->callback([&, check_path] {
            const auto loaded = load_with_params(*check_path);
            std::ostringstream out;
            out << "ok: N=" << loaded.code.block_length() << " k=" << loaded.code.dimension()
                << "\n";
            emit_text(g, out.str());
        });
    }

    // ---- exact ----
    auto* exact_cmd = app.add_subcommand("exact", "exhaustive weight tables and exact checks");
    exact_cmd->require_subcommand(1);
    {
        auto* table = exact_cmd->add_subcommand("table", "exact weight table as JSON");
        auto args = std::make_shared<CodeArgs>();
        args->attach(table);
        auto rmax = std::make_shared<std::size_t>(0);
        table->add_option("--rmax", *rmax, "largest r row")->required();
        table->callback([&, args, rmax] {
            const auto loaded = args->resolve();
            const auto t = exact_weight_table(loaded.code, *rmax, g.budget_exhaustive);
            json j = t.to_json();
            j["run"] = run_record("exact table", {{"rmax", *rmax}}, g);
            emit_json(g, j);
        });

        auto* curve = exact_cmd->add_subcommand("curve", "exact f_r curves as CSV");
        auto cargs = std::make_shared<CodeArgs>();
        cargs->attach(curve);
        auto rmax2 = std::make_shared<std::size_t>(0);
        auto grid = std::make_shared<std::string>();
        curve->add_option("--rmax", *rmax2, "curves f_1..f_rmax")->required();
        curve->add_option("--p", *grid, "p grid start:stop:step")->required();
        curve->callback([&, cargs, rmax2, grid] {
            const auto loaded = cargs->resolve();
            const auto t = exact_weight_table(loaded.code, *rmax2, g.budget_exhaustive);
            std::string csv = curve_csv_header(
                run_record("exact curve", {{"rmax", *rmax2}, {"p", *grid}}, g));
            for (const Rat& p : parse_grid(*grid)) {
                for (std::size_t r = 1; r <= *rmax2; ++r) {
                    const Rat val = exact_fr(t, r, p);
                    csv += fmt(to_double(p)) + "," + std::to_string(r) + "," +
                           fmt(to_double(val)) + ",0,0," + std::to_string(g.seed) + "\n";
                }
            }
            emit_text(g, csv);
        });

        auto* vtz = exact_cmd->add_subcommand("verify-tz", "Pr[h!=0] = f_r - f_{r+1}, exact");
        auto targs = std::make_shared<CodeArgs>();
        targs->attach(vtz);
        auto tr = std::make_shared<long long>(-1);
        auto tgrid = std::make_shared<std::string>("0.1:0.9:0.1");
        vtz->add_option("--r", *tr, "threshold dimension (default: all 1..k)");
        vtz->add_option("--p", *tgrid, "p grid")->capture_default_str();
        vtz->callback([&, targs, tr, tgrid] {
            const auto loaded = targs->resolve();
            const auto grid_v = parse_grid(*tgrid);
            std::vector<VerificationReport> reps;
            if (*tr >= 1) {
                reps.push_back(verify_tz_identity(loaded.code, static_cast<std::size_t>(*tr),
                                                  grid_v, g.budget_exhaustive));
            } else {
                for (std::size_t r = 1; r <= loaded.code.dimension(); ++r) {
                    reps.push_back(verify_tz_identity(loaded.code, r, grid_v, g.budget_exhaustive));
                }
            }
            exit_code = finish_reports(g, "exact verify-tz", {{"p", *tgrid}}, reps);
        });

        auto* varea = exact_cmd->add_subcommand("verify-area", "integral gap <= 1/d_r, exact");
        auto aargs = std::make_shared<CodeArgs>();
        aargs->attach(varea);
        auto ar = std::make_shared<std::size_t>(1);
        varea->add_option("--r", *ar, "subcode dimension")->required();
        varea->callback([&, aargs, ar] {
            const auto loaded = aargs->resolve();
            const auto t = exact_weight_table(loaded.code, *ar + 1, g.budget_exhaustive);
            const auto dr = dr_dispatch(loaded.code, loaded.rm,
                                        Int(static_cast<unsigned long>(*ar)),
                                        g.subspace_budget());
            exit_code = finish_report(g, "exact verify-area", {{"r", *ar}},
                                      verify_area_bound(loaded.code, t, *ar, dr));
        });

        auto* vruss = exact_cmd->add_subcommand("verify-russo", "p f_r' = E[h], exact");
        auto rargs = std::make_shared<CodeArgs>();
        rargs->attach(vruss);
        auto rr = std::make_shared<long long>(-1);
        auto rgrid = std::make_shared<std::string>("0.1:0.9:0.1");
        vruss->add_option("--r", *rr, "threshold dimension (default: all 1..k)");
        vruss->add_option("--p", *rgrid, "p grid")->capture_default_str();
        vruss->callback([&, rargs, rr, rgrid] {
            const auto loaded = rargs->resolve();
            const auto grid_v = parse_grid(*rgrid);
            std::vector<VerificationReport> reps;
            if (*rr >= 1) {
                reps.push_back(verify_margulis_russo(loaded.code, static_cast<std::size_t>(*rr),
                                                     grid_v, g.budget_exhaustive));
            } else {
                for (std::size_t r = 1; r <= loaded.code.dimension(); ++r) {
                    reps.push_back(
                        verify_margulis_russo(loaded.code, r, grid_v, g.budget_exhaustive));
                }
            }
            exit_code = finish_reports(g, "exact verify-russo", {{"p", *rgrid}}, reps);
        });
    }

    // ---- mc ----
    auto* mc_cmd = app.add_subcommand("mc", "Monte Carlo estimators");
    mc_cmd->require_subcommand(1);
    {
        auto* curve = mc_cmd->add_subcommand("curve", "estimated f_r over a p grid, CSV");
        auto args = std::make_shared<CodeArgs>();
        args->attach(curve);
        auto r = std::make_shared<std::size_t>(1);
        auto grid = std::make_shared<std::string>();
        curve->add_option("--r", *r, "threshold dimension")->capture_default_str();
        curve->add_option("--p", *grid, "p grid start:stop:step")->required();
        curve->callback([&, args, r, grid] {
            const auto loaded = args->resolve();
            std::string csv = curve_csv_header(run_record("mc curve", {{"r", *r}, {"p", *grid}}, g));
            std::uint64_t base = 0;
            for (const Rat& p : parse_grid(*grid)) {
                const auto e =
                    mc_fr(loaded.code, to_double(p), *r, g.trials, g.seed, g.threads, base);
                base += g.trials;
                csv += fmt(e.p) + "," + std::to_string(e.r) + "," + fmt(e.estimate) + "," +
                       fmt(e.stderr_) + "," + std::to_string(e.trials) + "," +
                       std::to_string(e.seed) + "\n";
            }
            emit_text(g, csv);
        });

        auto* bit = mc_cmd->add_subcommand("bit", "bit-error estimate at one p");
        auto bargs = std::make_shared<CodeArgs>();
        bargs->attach(bit);
        auto bp = std::make_shared<std::string>();
        auto bi = std::make_shared<std::size_t>(0);
        bit->add_option("--p", *bp, "erasure probability")->required();
        bit->add_option("--i", *bi, "coordinate")->capture_default_str();
        bit->callback([&, bargs, bp, bi] {
            const auto loaded = bargs->resolve();
            const auto e = mc_bit_error(loaded.code, to_double(parse_decimal(*bp)), *bi, g.trials,
                                        g.seed, g.threads);
            json j = estimate_json(e);
            j["run"] = run_record("mc bit", {{"p", *bp}, {"i", *bi}}, g);
            emit_json(g, j);
        });

        auto* block = mc_cmd->add_subcommand("block", "block-error estimate at one p");
        auto kargs = std::make_shared<CodeArgs>();
        kargs->attach(block);
        auto kp = std::make_shared<std::string>();
        block->add_option("--p", *kp, "erasure probability")->required();
        block->callback([&, kargs, kp] {
            const auto loaded = kargs->resolve();
            const auto e =
                mc_fr(loaded.code, to_double(parse_decimal(*kp)), 1, g.trials, g.seed, g.threads);
            json j = estimate_json(e);
            j["run"] = run_record("mc block", {{"p", *kp}}, g);
            emit_json(g, j);
        });

        auto* pstar = mc_cmd->add_subcommand("pstar", "bisect the bit-error curve to 1/2");
        auto pargs = std::make_shared<CodeArgs>();
        pargs->attach(pstar);
        auto pi = std::make_shared<std::size_t>(0);
        auto ptol = std::make_shared<double>(0.005);
        pstar->add_option("--i", *pi, "coordinate")->capture_default_str();
        pstar->add_option("--ptol", *ptol, "bisection tolerance")->capture_default_str();
        pstar->callback([&, pargs, pi, ptol] {
            const auto loaded = pargs->resolve();
            const auto t = estimate_pstar(loaded.code, *pi, g.trials, *ptol, g.seed, g.threads);
            json j = threshold_json(t);
            j["run"] = run_record("mc pstar", {{"i", *pi}, {"ptol", *ptol}}, g);
            emit_json(g, j);
        });

        auto* theta = mc_cmd->add_subcommand("theta", "bisect f_r to a target level");
        auto thargs = std::make_shared<CodeArgs>();
        thargs->attach(theta);
        auto thr = std::make_shared<std::size_t>(1);
        auto alpha = std::make_shared<double>(0.5);
        auto thtol = std::make_shared<double>(0.005);
        theta->add_option("--r", *thr, "threshold dimension")->capture_default_str();
        theta->add_option("--alpha", *alpha, "target level in (0,1)")->required();
        theta->add_option("--ptol", *thtol, "bisection tolerance")->capture_default_str();
        theta->callback([&, thargs, thr, alpha, thtol] {
            const auto loaded = thargs->resolve();
            const auto t =
                estimate_theta(loaded.code, *thr, *alpha, g.trials, *thtol, g.seed, g.threads);
            json j = threshold_json(t);
            j["r"] = *thr;
            j["run"] = run_record("mc theta", {{"r", *thr}, {"alpha", *alpha}, {"ptol", *thtol}}, g);
            emit_json(g, j);
        });

        auto* width = mc_cmd->add_subcommand("width", "theta(hi) - theta(lo) transition width");
        auto wargs = std::make_shared<CodeArgs>();
        wargs->attach(width);
        auto wr = std::make_shared<std::size_t>(1);
        auto wlo = std::make_shared<double>(0.1);
        auto whi = std::make_shared<double>(0.9);
        auto wtol = std::make_shared<double>(0.005);
        width->add_option("--r", *wr, "threshold dimension")->capture_default_str();
        width->add_option("--lo", *wlo, "lower level")->capture_default_str();
        width->add_option("--hi", *whi, "upper level")->capture_default_str();
        width->add_option("--ptol", *wtol, "bisection tolerance")->capture_default_str();
        width->callback([&, wargs, wr, wlo, whi, wtol] {
            const auto loaded = wargs->resolve();
            const auto w = transition_width(loaded.code, *wr, *wlo, *whi, g.trials, *wtol, g.seed,
                                            g.threads);
            json j{{"width", w.width},
                   {"width_lo", w.width_lo},
                   {"width_hi", w.width_hi},
                   {"lo_point", threshold_json(w.lo_point)},
                   {"hi_point", threshold_json(w.hi_point)}};
            j["run"] = run_record(
                "mc width", {{"r", *wr}, {"lo", *wlo}, {"hi", *whi}, {"ptol", *wtol}}, g);
            emit_json(g, j);
        });
    }

    // ---- weights ----
    auto* weights_cmd = app.add_subcommand("weights", "minimum support weights d_r");
    weights_cmd->require_subcommand(1);
    {
        auto* dmin = weights_cmd->add_subcommand("dmin", "brute-force minimum distance");
        auto args = std::make_shared<CodeArgs>();
        args->attach(dmin);
        dmin->callback([&, args] {
            const auto loaded = args->resolve();
            json j{{"dmin", min_distance_bruteforce(loaded.code)}};
            j["run"] = run_record("weights dmin", {}, g);
            emit_json(g, j);
        });

        auto* drb = weights_cmd->add_subcommand("dr-brute", "exact d_r by subspace enumeration");
        auto bargs = std::make_shared<CodeArgs>();
        bargs->attach(drb);
        auto br = std::make_shared<std::size_t>(1);
        drb->add_option("--r", *br, "subcode dimension")->required();
        drb->callback([&, bargs, br] {
            const auto loaded = bargs->resolve();
            const auto dr = dr_bruteforce(loaded.code, *br, g.subspace_budget());
            json j{{"r", *br}, {"d_r", dr.value.get_str()}, {"kind", "exact"}};
            if (dr.witness) {
                json rows = json::array();
                for (std::size_t i = 0; i < dr.witness->rows(); ++i) {
                    std::string row;
                    for (std::size_t c = 0; c < dr.witness->cols(); ++c) {
                        row += dr.witness->get(i, c) ? '1' : '0';
                    }
                    rows.push_back(row);
                }
                j["witness"] = rows;
            }
            j["run"] = run_record("weights dr-brute", {{"r", *br}}, g);
            emit_json(g, j);
        });

        auto* wei = weights_cmd->add_subcommand("wei", "Wei subcode S_t and its parameters");
        auto wn = std::make_shared<std::size_t>(0);
        auto wd = std::make_shared<std::size_t>(0);
        auto wt = std::make_shared<std::size_t>(0);
        auto save = std::make_shared<std::string>();
        wei->add_option("--n", *wn, "variables")->required();
        wei->add_option("--d", *wd, "degree")->required();
        wei->add_option("--t", *wt, "prefix length")->required();
        wei->add_option("--save-generator", *save, "also write the subcode generator here");
        wei->callback([&, wn, wd, wt, save] {
            const auto wp = wei_point(*wn, *wd, *wt);
            json j{{"n", *wn},
                   {"d", *wd},
                   {"t", *wt},
                   {"dimension", wp.dimension.get_str()},
                   {"support", wp.support.get_str()}};
            if (!save->empty()) {
                std::ofstream f(*save);
                if (!f) throw InputError("cannot open " + *save + " for writing");
                f << "# run: "
                  << run_record("weights wei", {{"n", *wn}, {"d", *wd}, {"t", *wt}}, g).dump()
                  << "\n";
                save_code(wei_subcode(*wn, *wd, *wt), f);
                j["generator_file"] = *save;
            }
            j["run"] = run_record("weights wei", {{"n", *wn}, {"d", *wd}, {"t", *wt}}, g);
            emit_json(g, j);
        });

        auto* drl = weights_cmd->add_subcommand("dr-bound", "RM lower bound for d_r");
        auto ln = std::make_shared<std::size_t>(0);
        auto ld = std::make_shared<std::size_t>(0);
        auto lr = std::make_shared<std::string>();
        drl->add_option("--n", *ln, "variables")->required();
        drl->add_option("--d", *ld, "degree")->required();
        drl->add_option("--r", *lr, "subcode dimension (big integer)")->required();
        drl->callback([&, ln, ld, lr] {
            const auto res = rm_dr_lower_bound(*ln, *ld, Int(*lr, 10));
            json j{{"r", *lr}, {"d_r_lower_bound", res.value.get_str()}, {"kind", "lower-bound"}};
            j["run"] = run_record("weights dr-bound", {{"n", *ln}, {"d", *ld}, {"r", *lr}}, g);
            emit_json(g, j);
        });

        auto* gamma = weights_cmd->add_subcommand("gamma", "gamma = sqrt(sum 1/d_r), r < N0");
        auto gargs = std::make_shared<CodeArgs>();
        gargs->attach(gamma);
        auto gn0 = std::make_shared<std::size_t>(1);
        gamma->add_option("--n0", *gn0, "upper dimension N0")->required();
        gamma->callback([&, gargs, gn0] {
            const auto loaded = gargs->resolve();
            const auto gv = compute_gamma(loaded.code, loaded.rm, *gn0, g.subspace_budget());
            json terms = json::array();
            for (const auto& t : gv.terms) {
                terms.push_back({{"r", t.r.get_str()},
                                 {"d_r", t.value.get_str()},
                                 {"kind", t.kind == WeightKind::exact ? "exact" : "lower-bound"}});
            }
            json j{{"N0", *gn0},
                   {"gamma", gv.gamma},
                   {"gamma_sq", gv.gamma_sq.get_str()},
                   {"any_lower_bound", gv.any_lower_bound},
                   {"terms", terms}};
            j["run"] = run_record("weights gamma", {{"n0", *gn0}}, g);
            emit_json(g, j);
        });
    }

    // ---- verify ----
    auto* verify_cmd = app.add_subcommand("verify", "statistical and bignum theorem checks");
    verify_cmd->require_subcommand(1);
    {
        auto* ss = verify_cmd->add_subcommand("straightshot", "theta_1 vs theta_N0 gap bound");
        auto args = std::make_shared<CodeArgs>();
        args->attach(ss);
        auto n0 = std::make_shared<std::size_t>(1);
        auto alpha = std::make_shared<double>(0.25);
        auto ptol = std::make_shared<double>(0.005);
        ss->add_option("--n0", *n0, "upper dimension N0")->required();
        ss->add_option("--alpha", *alpha, "level alpha")->capture_default_str();
        ss->add_option("--ptol", *ptol, "bisection tolerance")->capture_default_str();
        ss->callback([&, args, n0, alpha, ptol] {
            const auto loaded = args->resolve();
            McSettings mc = g.mc();
            mc.trials_per_probe = g.trials;
            mc.p_tol = *ptol;
            exit_code = finish_report(g, "verify straightshot", {{"n0", *n0}, {"alpha", *alpha}},
                                      verify_straightshot(loaded.code, loaded.rm, *n0, *alpha, mc));
        });

        auto* bb = verify_cmd->add_subcommand("bittoblock", "bit-to-block desk check");
        auto bargs = std::make_shared<CodeArgs>();
        bargs->attach(bb);
        auto bp = std::make_shared<std::string>();
        auto boffset = std::make_shared<double>(-1);
        auto bptol = std::make_shared<double>(0.005);
        bb->add_option("--p", *bp, "absolute erasure probability");
        bb->add_option("--pstar-offset", *boffset, "use p = pstar_hat - offset instead of --p");
        bb->add_option("--ptol", *bptol, "pstar bisection tolerance")->capture_default_str();
        bb->callback([&, bargs, bp, boffset, bptol] {
            const auto loaded = bargs->resolve();
            McSettings mc = g.mc();
            mc.p_tol = *bptol;
            double p;
            if (*boffset >= 0) {
                const auto ps =
                    estimate_pstar(loaded.code, 0, mc.trials_per_probe, mc.p_tol, g.seed, g.threads);
                p = std::max(0.0, ps.p_hat - *boffset);
            } else if (!bp->empty()) {
                p = to_double(parse_decimal(*bp));
            } else {
                throw InputError("give --p or --pstar-offset");
            }
            exit_code = finish_report(g, "verify bittoblock", {{"p", p}},
                                      verify_bittoblock(loaded.code, loaded.rm, p, mc));
        });

        auto* bc = verify_cmd->add_subcommand("bitcapacity", "bit-error decay bound");
        auto cargs = std::make_shared<CodeArgs>();
        cargs->attach(bc);
        auto ci = std::make_shared<std::size_t>(0);
        auto cplist = std::make_shared<std::vector<std::string>>();
        auto coffsets = std::make_shared<std::vector<double>>();
        auto cptol = std::make_shared<double>(0.005);
        bc->add_option("--i", *ci, "coordinate")->capture_default_str();
        bc->add_option("--p", *cplist, "absolute p values");
        bc->add_option("--offsets", *coffsets, "p = pstar_hat - offset for each offset");
        bc->add_option("--ptol", *cptol, "pstar bisection tolerance")->capture_default_str();
        bc->callback([&, cargs, ci, cplist, coffsets, cptol] {
            const auto loaded = cargs->resolve();
            McSettings mc = g.mc();
            mc.p_tol = *cptol;
            const auto ps =
                estimate_pstar(loaded.code, *ci, mc.trials_per_probe, mc.p_tol, g.seed, g.threads);
            std::vector<double> ps_list;
            for (const auto& s : *cplist) ps_list.push_back(to_double(parse_decimal(s)));
            for (double off : *coffsets) ps_list.push_back(ps.p_hat - off);
            if (ps_list.empty()) throw InputError("give --p or --offsets");
            exit_code = finish_report(g, "verify bitcapacity", {{"i", *ci}},
                                      verify_bitcapacity(loaded.code, ps_list, *ci, mc, ps));
        });

        auto* rb = verify_cmd->add_subcommand("rmbounds", "exact bignum subcode inequalities");
        auto rn = std::make_shared<unsigned long>(0);
        auto rd = std::make_shared<unsigned long>(0);
        auto rts = std::make_shared<std::vector<unsigned long>>();
        rb->add_option("--n", *rn, "variables")->required();
        rb->add_option("--d", *rd, "degree")->required();
        rb->add_option("--t", *rts, "explicit t samples (default: spread of ~20)");
        rb->callback([&, rn, rd, rts] {
            exit_code = finish_report(g, "verify rmbounds", {{"n", *rn}, {"d", *rd}},
                                      verify_rmbounds(*rn, *rd, *rts));
        });

        auto* rr = verify_cmd->add_subcommand("ratiorm", "d_r/r ratio bound via the Wei chain");
        auto qn = std::make_shared<unsigned long>(0);
        auto qd = std::make_shared<unsigned long>(0);
        auto qe = std::make_shared<std::string>();
        rr->add_option("--n", *qn, "variables")->required();
        rr->add_option("--d", *qd, "degree")->required();
        rr->add_option("--eps", *qe, "decimal eps, or 'min' for 6 sqrt(log2 n/n)")->required();
        rr->callback([&, qn, qd, qe] {
            exit_code = finish_report(g, "verify ratiorm", {{"n", *qn}, {"d", *qd}, {"eps", *qe}},
                                      verify_ratiorm(*qn, *qd, EpsSpec::parse(*qe, 6)));
        });

        auto* rc = verify_cmd->add_subcommand("rmcapacity-pre",
                                              "explicit hypothesis report for the capacity claim");
        auto pn = std::make_shared<unsigned long>(0);
        auto pd = std::make_shared<unsigned long>(0);
        auto pe = std::make_shared<std::string>();
        rc->add_option("--n", *pn, "variables")->required();
        rc->add_option("--d", *pd, "degree")->required();
        rc->add_option("--eps", *pe, "decimal eps")->required();
        rc->callback([&, pn, pd, pe] {
            exit_code =
                finish_report(g, "verify rmcapacity-pre", {{"n", *pn}, {"d", *pd}, {"eps", *pe}},
                              verify_rmcapacity_preconditions(*pn, *pd, EpsSpec::parse(*pe, 20)));
        });
    }

    // global flags remain valid after any subcommand
    const std::function<void(CLI::App*)> allow_fallthrough = [&](CLI::App* cmd) {
        cmd->fallthrough(true);
        for (auto* sub : cmd->get_subcommands({})) allow_fallthrough(sub);
    };
    for (auto* sub : app.get_subcommands({})) allow_fallthrough(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 2;
    } catch (const ResourceLimitError& e) {
        std::cerr << "resource limit: " << e.what() << "\n";
        return 3;
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return exit_code;
}
