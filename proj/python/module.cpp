// pybind11 surface over the core library: code construction, covered-subcode
// queries, exact curves, Monte Carlo estimators, and the theorem checkers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "bect/analysis.hpp"
#include "bect/bigmath.hpp"
#include "bect/code.hpp"
#include "bect/erasure.hpp"
#include "bect/errors.hpp"
#include "bect/subspaces.hpp"
#include "bect/verify.hpp"

namespace py = pybind11;
using namespace bect;

namespace {

py::object big_to_py(const Int& v) {
    return py::module_::import("builtins").attr("int")(v.get_str());
}

py::object json_to_py(const nlohmann::json& j) {
    const py::object loads = py::module_::import("json").attr("loads");
    return loads(j.dump());
}

Rat rat_from_str(const std::string& s) {
    Rat q = parse_decimal(s);
    return q;
}

std::vector<std::string> generator_rows(const LinearCode& code) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < code.dimension(); ++i) {
        std::string row;
        for (std::size_t j = 0; j < code.block_length(); ++j) {
            row += code.generator().get(i, j) ? '1' : '0';
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

LinearCode code_from_rows(const std::vector<std::string>& rows) {
    if (rows.empty()) throw InputError("need at least one generator row");
    BitMatrix g(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != rows.front().size()) {
            throw InputError("generator rows must have equal length");
        }
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j] == '1') {
                g.set(i, j, true);
            } else if (rows[i][j] != '0') {
                throw InputError("generator rows must be 0/1 strings");
            }
        }
    }
    return LinearCode::from_generator(std::move(g));
}

ErasurePattern pattern_from_indices(std::size_t n, const std::vector<std::size_t>& erased) {
    ErasurePattern x = ErasurePattern::zeros(n);
    for (std::size_t i : erased) {
        if (i >= n) throw InputError("erased index out of range");
        x.set(i, true);
    }
    return x;
}

py::dict estimate_dict(const CurveEstimate& e) {
    py::dict d;
    d["p"] = e.p;
    d["r"] = e.r;
    d["trials"] = e.trials;
    d["successes"] = e.successes;
    d["estimate"] = e.estimate;
    d["stderr"] = e.stderr_;
    d["seed"] = e.seed;
    return d;
}

py::dict threshold_dict(const ThresholdEstimate& t) {
    py::dict d;
    d["alpha"] = t.alpha;
    d["p_hat"] = t.p_hat;
    d["p_tol"] = t.p_tol;
    d["bracket_lo"] = t.bracket_lo;
    d["bracket_hi"] = t.bracket_hi;
    d["conservative_lo"] = t.conservative_lo;
    d["conservative_hi"] = t.conservative_hi;
    d["trials_per_probe"] = t.trials_per_probe;
    d["probes"] = t.probes;
    d["seed"] = t.seed;
    d["note"] = t.note;
    return d;
}

std::optional<RMParams> rm_opt(std::optional<std::pair<std::size_t, std::size_t>> nd) {
    if (!nd) return std::nullopt;
    return RMParams{nd->first, nd->second};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "covered-subcode erasure analysis for binary linear codes";

    py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
    py::register_exception<ResourceLimitError>(m, "ResourceLimitError", PyExc_RuntimeError);

    py::class_<LinearCode>(m, "LinearCode")
        .def_static("from_rows", &code_from_rows, py::arg("rows"),
                    "build from a list of equal-length 0/1 strings (rows must be independent)")
        .def_property_readonly("N", &LinearCode::block_length)
        .def_property_readonly("k", &LinearCode::dimension)
        .def("rows", &generator_rows)
        .def("__repr__", [](const LinearCode& c) {
            return "<LinearCode N=" + std::to_string(c.block_length()) +
                   " k=" + std::to_string(c.dimension()) + ">";
        });

    m.def(
        "rm_code",
        [](std::size_t n, std::size_t d) { return rm_code({n, d}); },
        py::arg("n"), py::arg("d"), "Reed-Muller generator RM(n, d)");
    m.def(
        "rm_dimension",
        [](std::size_t n, std::size_t d) { return big_to_py(rm_dimension(n, d)); },
        py::arg("n"), py::arg("d"));
    m.def("min_distance", &min_distance_bruteforce, py::arg("code"),
          py::arg("exponent_budget") = kDefaultDminExponentBudget);
    m.def(
        "gaussian_binomial",
        [](std::size_t k, std::size_t r) { return big_to_py(gaussian_binomial(k, r)); },
        py::arg("k"), py::arg("r"));

    m.def(
        "wei_point",
        [](std::size_t n, std::size_t d, std::size_t t) {
            const auto wp = wei_point(n, d, t);
            return py::make_tuple(big_to_py(wp.dimension), big_to_py(wp.support));
        },
        py::arg("n"), py::arg("d"), py::arg("t"),
        "(dimension, support) of the Wei subcode S_t of RM(n, d)");
    m.def(
        "wei_subcode",
        [](std::size_t n, std::size_t d, std::size_t t) { return wei_subcode(n, d, t); },
        py::arg("n"), py::arg("d"), py::arg("t"));

    m.def(
        "dr_bruteforce",
        [](const LinearCode& code, std::size_t r, double budget) {
            const auto res = dr_bruteforce(code, r, Int(budget));
            py::dict out;
            out["r"] = r;
            out["value"] = big_to_py(res.value);
            out["kind"] = "exact";
            if (res.witness) {
                std::vector<std::string> rows;
                for (std::size_t i = 0; i < res.witness->rows(); ++i) {
                    std::string row;
                    for (std::size_t j = 0; j < res.witness->cols(); ++j) {
                        row += res.witness->get(i, j) ? '1' : '0';
                    }
                    rows.push_back(std::move(row));
                }
                out["witness"] = rows;
            }
            return out;
        },
        py::arg("code"), py::arg("r"), py::arg("budget") = 1e8);
    m.def(
        "rm_dr_lower_bound",
        [](std::size_t n, std::size_t d, const std::string& r) {
            return big_to_py(rm_dr_lower_bound(n, d, Int(r, 10)).value);
        },
        py::arg("n"), py::arg("d"), py::arg("r"),
        "2^(n-t*) lower bound for d_r(RM(n,d)); r as a decimal string");

    m.def(
        "covered_subcode",
        [](const LinearCode& code, const std::vector<std::size_t>& erased) {
            const auto s = covered_subcode(code, pattern_from_indices(code.block_length(), erased));
            py::dict out;
            out["dim"] = s.dim;
            out["support"] = s.support;
            std::vector<std::string> rows;
            for (std::size_t i = 0; i < s.basis.rows(); ++i) {
                std::string row;
                for (std::size_t j = 0; j < s.basis.cols(); ++j) {
                    row += s.basis.get(i, j) ? '1' : '0';
                }
                rows.push_back(std::move(row));
            }
            out["basis"] = rows;
            return out;
        },
        py::arg("code"), py::arg("erased"),
        "S_C(x) for the pattern erasing the given coordinates");
    m.def(
        "bit_recoverable",
        [](const LinearCode& code, const std::vector<std::size_t>& erased, std::size_t i) {
            return bit_recoverable(code, pattern_from_indices(code.block_length(), erased), i);
        },
        py::arg("code"), py::arg("erased"), py::arg("i"));

    m.def(
        "exact_weight_table",
        [](const LinearCode& code, std::size_t rmax, std::size_t budget) {
            return json_to_py(exact_weight_table(code, rmax, budget).to_json());
        },
        py::arg("code"), py::arg("rmax"), py::arg("budget") = kDefaultExhaustiveBudget);
    m.def(
        "exact_fr",
        [](const LinearCode& code, std::size_t r, double p, std::size_t budget) {
            return exact_fr(exact_weight_table(code, r, budget), r, p);
        },
        py::arg("code"), py::arg("r"), py::arg("p"),
        py::arg("budget") = kDefaultExhaustiveBudget);
    m.def(
        "exact_integral_gap",
        [](const LinearCode& code, std::size_t r, std::size_t budget) {
            const auto t = exact_weight_table(code, r + 1, budget);
            return exact_integral_gap(t, r).get_str();
        },
        py::arg("code"), py::arg("r"), py::arg("budget") = kDefaultExhaustiveBudget,
        "exact rational integral of f_r - f_(r+1), as a 'num/den' string");

    m.def(
        "mc_fr",
        [](const LinearCode& code, double p, std::size_t r, std::uint64_t trials,
           std::uint64_t seed, unsigned threads) {
            return estimate_dict(mc_fr(code, p, r, trials, seed, threads));
        },
        py::arg("code"), py::arg("p"), py::arg("r") = 1, py::arg("trials") = 100000,
        py::arg("seed") = 1, py::arg("threads") = 1);
    m.def(
        "mc_bit_error",
        [](const LinearCode& code, double p, std::size_t i, std::uint64_t trials,
           std::uint64_t seed, unsigned threads) {
            return estimate_dict(mc_bit_error(code, p, i, trials, seed, threads));
        },
        py::arg("code"), py::arg("p"), py::arg("i") = 0, py::arg("trials") = 100000,
        py::arg("seed") = 1, py::arg("threads") = 1);
    m.def(
        "estimate_pstar",
        [](const LinearCode& code, std::size_t i, std::uint64_t trials_per_probe, double p_tol,
           std::uint64_t seed, unsigned threads) {
            return threshold_dict(estimate_pstar(code, i, trials_per_probe, p_tol, seed, threads));
        },
        py::arg("code"), py::arg("i") = 0, py::arg("trials_per_probe") = 10000,
        py::arg("p_tol") = 0.005, py::arg("seed") = 1, py::arg("threads") = 1);
    m.def(
        "estimate_theta",
        [](const LinearCode& code, std::size_t r, double alpha, std::uint64_t trials_per_probe,
           double p_tol, std::uint64_t seed, unsigned threads) {
            return threshold_dict(
                estimate_theta(code, r, alpha, trials_per_probe, p_tol, seed, threads));
        },
        py::arg("code"), py::arg("r"), py::arg("alpha"), py::arg("trials_per_probe") = 10000,
        py::arg("p_tol") = 0.005, py::arg("seed") = 1, py::arg("threads") = 1);
    m.def(
        "transition_width",
        [](const LinearCode& code, std::size_t r, double lo, double hi,
           std::uint64_t trials_per_probe, double p_tol, std::uint64_t seed, unsigned threads) {
            const auto w = transition_width(code, r, lo, hi, trials_per_probe, p_tol, seed, threads);
            py::dict d;
            d["width"] = w.width;
            d["width_lo"] = w.width_lo;
            d["width_hi"] = w.width_hi;
            d["lo_point"] = threshold_dict(w.lo_point);
            d["hi_point"] = threshold_dict(w.hi_point);
            return d;
        },
        py::arg("code"), py::arg("r"), py::arg("lo"), py::arg("hi"),
        py::arg("trials_per_probe") = 10000, py::arg("p_tol") = 0.005, py::arg("seed") = 1,
        py::arg("threads") = 1);

    // checkers: each returns the full report as a dict
    m.def(
        "verify_tz_identity",
        [](const LinearCode& code, std::size_t r, const std::vector<std::string>& grid,
           std::size_t budget) {
            std::vector<Rat> g;
            for (const auto& s : grid) g.push_back(rat_from_str(s));
            return json_to_py(verify_tz_identity(code, r, g, budget).to_json());
        },
        py::arg("code"), py::arg("r"),
        py::arg("grid") = std::vector<std::string>{"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7",
                                                   "0.8", "0.9"},
        py::arg("budget") = kDefaultExhaustiveBudget);
    m.def(
        "verify_margulis_russo",
        [](const LinearCode& code, std::size_t r, const std::vector<std::string>& grid,
           std::size_t budget) {
            std::vector<Rat> g;
            for (const auto& s : grid) g.push_back(rat_from_str(s));
            return json_to_py(verify_margulis_russo(code, r, g, budget).to_json());
        },
        py::arg("code"), py::arg("r"),
        py::arg("grid") = std::vector<std::string>{"0.1", "0.2", "0.3", "0.4", "0.5", "0.6", "0.7",
                                                   "0.8", "0.9"},
        py::arg("budget") = kDefaultExhaustiveBudget);
    m.def(
        "verify_area_bound",
        [](const LinearCode& code, std::size_t r, std::size_t budget) {
            const auto t = exact_weight_table(code, r + 1, budget);
            const auto dr = dr_bruteforce(code, r);
            return json_to_py(verify_area_bound(code, t, r, dr).to_json());
        },
        py::arg("code"), py::arg("r"), py::arg("budget") = kDefaultExhaustiveBudget);
    m.def(
        "verify_nu_bound",
        [](const LinearCode& code, std::size_t r, std::size_t budget) {
            return json_to_py(verify_nu_bound(code, r, dr_bruteforce(code, r), budget).to_json());
        },
        py::arg("code"), py::arg("r"), py::arg("budget") = kDefaultExhaustiveBudget);
    m.def(
        "verify_straightshot",
        [](const LinearCode& code, std::optional<std::pair<std::size_t, std::size_t>> rm,
           std::size_t n0, double alpha, std::uint64_t trials_per_probe, double p_tol,
           std::uint64_t seed, unsigned threads) {
            McSettings mc;
            mc.trials_per_probe = trials_per_probe;
            mc.p_tol = p_tol;
            mc.seed = seed;
            mc.threads = threads;
            return json_to_py(verify_straightshot(code, rm_opt(rm), n0, alpha, mc).to_json());
        },
        py::arg("code"), py::arg("rm") = std::nullopt, py::arg("n0") = 1, py::arg("alpha") = 0.25,
        py::arg("trials_per_probe") = 10000, py::arg("p_tol") = 0.005, py::arg("seed") = 1,
        py::arg("threads") = 1);
    m.def(
        "verify_bittoblock",
        [](const LinearCode& code, std::optional<std::pair<std::size_t, std::size_t>> rm, double p,
           std::uint64_t trials, std::uint64_t seed, unsigned threads) {
            McSettings mc;
            mc.trials = trials;
            mc.seed = seed;
            mc.threads = threads;
            return json_to_py(verify_bittoblock(code, rm_opt(rm), p, mc).to_json());
        },
        py::arg("code"), py::arg("rm") = std::nullopt, py::arg("p") = 0.3,
        py::arg("trials") = 100000, py::arg("seed") = 1, py::arg("threads") = 1);
    m.def(
        "verify_bitcapacity",
        [](const LinearCode& code, const std::vector<double>& p_list, std::size_t i,
           std::uint64_t trials, std::uint64_t trials_per_probe, double p_tol, std::uint64_t seed,
           unsigned threads) {
            McSettings mc;
            mc.trials = trials;
            mc.trials_per_probe = trials_per_probe;
            mc.p_tol = p_tol;
            mc.seed = seed;
            mc.threads = threads;
            return json_to_py(verify_bitcapacity(code, p_list, i, mc).to_json());
        },
        py::arg("code"), py::arg("p_list"), py::arg("i") = 0, py::arg("trials") = 100000,
        py::arg("trials_per_probe") = 10000, py::arg("p_tol") = 0.005, py::arg("seed") = 1,
        py::arg("threads") = 1);
    m.def(
        "verify_rmbounds",
        [](unsigned long n, unsigned long d, const std::vector<unsigned long>& ts) {
            return json_to_py(verify_rmbounds(n, d, ts).to_json());
        },
        py::arg("n"), py::arg("d"), py::arg("t_samples") = std::vector<unsigned long>{});
    m.def(
        "verify_ratiorm",
        [](unsigned long n, unsigned long d, const std::string& eps) {
            return json_to_py(verify_ratiorm(n, d, EpsSpec::parse(eps, 6)).to_json());
        },
        py::arg("n"), py::arg("d"), py::arg("eps"),
        "eps: decimal string, or 'min' for 6*sqrt(log2(n)/n)");
    m.def(
        "verify_rmcapacity_preconditions",
        [](unsigned long n, unsigned long d, const std::string& eps) {
            return json_to_py(
                verify_rmcapacity_preconditions(n, d, EpsSpec::parse(eps, 20)).to_json());
        },
        py::arg("n"), py::arg("d"), py::arg("eps"));

    m.def(
        "load_code",
        [](const std::string& path) { return load_code(std::filesystem::path(path)); },
        py::arg("path"));
    m.def(
        "save_code",
        [](const LinearCode& code, const std::string& path) {
            save_code(code, std::filesystem::path(path));
        },
        py::arg("code"), py::arg("path"));
}
