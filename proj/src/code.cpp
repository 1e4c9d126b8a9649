#include "bect/code.hpp"

#include <algorithm>
#include <bit>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "bect/errors.hpp"
#include "bect/subspaces.hpp"

namespace bect {

LinearCode LinearCode::from_generator(BitMatrix generator) {
    if (generator.rows() == 0 || generator.cols() == 0) {
        throw InputError("linear code needs k >= 1 and N >= 1");
    }
    const std::size_t r = rank(generator);
    if (r != generator.rows()) {
        throw InputError("generator rows are dependent: rank " + std::to_string(r) + " < k " +
                         std::to_string(generator.rows()));
    }
    return LinearCode(std::move(generator));
}

namespace {

// Monomials of degree <= d over n variables as bitmasks, ordered by degree
// then lexicographically by variable set (x_1 before x_2, ...).
std::vector<std::uint64_t> monomial_masks(std::size_t n, std::size_t d) {
    std::vector<std::uint64_t> masks;
    for (std::size_t deg = 0; deg <= d; ++deg) {
        std::vector<std::uint64_t> of_degree;
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << n); ++m) {
            if (static_cast<std::size_t>(std::popcount(m)) == deg) of_degree.push_back(m);
        }
        // lexicographic by variable set: x_1 x_2 before x_1 x_3; ascending
        // masks already give that order because bit i encodes x_{i+1}.
        masks.insert(masks.end(), of_degree.begin(), of_degree.end());
    }
    return masks;
}

}  // namespace

LinearCode rm_code(RMParams params, std::size_t matrix_bit_budget) {
    const auto [n, d] = params;
    if (d > n) throw InputError("rm_code: d > n");
    if (n >= 63) throw ResourceLimitError("rm_code: 2^n does not fit the matrix budget");
    const std::size_t cols = std::size_t{1} << n;
    const Int dim = rm_dimension(n, d);
    const Int bits = Int(static_cast<unsigned long>(cols)) * dim;
    if (bits > Int(static_cast<unsigned long>(matrix_bit_budget))) {
        throw ResourceLimitError("rm_code: generator of " + bits.get_str() + " bits exceeds budget");
    }
    const std::size_t k = static_cast<std::size_t>(dim.get_ui());
    BitMatrix g(k, cols);
    const auto masks = monomial_masks(n, d);
    for (std::size_t row = 0; row < k; ++row) {
        const std::uint64_t mono = masks[row];
        for (std::size_t point = 0; point < cols; ++point) {
            // monomial evaluates to 1 iff every variable it uses is 1
            if ((point & mono) == mono) g.set(row, point, true);
        }
    }
    return LinearCode::from_generator(std::move(g));
}

Int rm_dimension(std::size_t n, std::size_t d) {
    if (d > n) throw InputError("rm_dimension: d > n");
    return binomial_sum(n, d);
}

std::size_t min_distance_bruteforce(const LinearCode& code, std::size_t exponent_budget) {
    const std::size_t k = code.dimension();
    if (k > exponent_budget) {
        throw ResourceLimitError("min_distance_bruteforce: 2^" + std::to_string(k) +
                                 " codewords exceed exponent budget " +
                                 std::to_string(exponent_budget));
    }
    const BitMatrix& g = code.generator();
    const std::size_t wpr = g.words_per_row();
    std::vector<std::uint64_t> word(wpr, 0);
    std::size_t best = code.block_length() + 1;
    // Gray-code walk: message m and m+1 differ in bit ctz(m+1).
    for (std::uint64_t m = 1; m < (std::uint64_t{1} << k); ++m) {
        const std::size_t flip = static_cast<std::size_t>(std::countr_zero(m));
        auto row = g.row(flip);
        for (std::size_t w = 0; w < wpr; ++w) word[w] ^= row[w];
        best = std::min(best, popcount_words(word));
    }
    return best;
}

LinearCode wei_subcode(std::size_t n, std::size_t d, std::size_t t) {
    if (t > d) throw InputError("wei_subcode: t > d");
    if (d > n) throw InputError("wei_subcode: d > n");
    const std::size_t cols = std::size_t{1} << n;
    const std::uint64_t prefix = (t == 0) ? 0 : ((std::uint64_t{1} << t) - 1);
    // monomials of degree <= d-t in x_{t+1}..x_n, shifted past the prefix
    std::vector<std::uint64_t> masks;
    for (std::size_t deg = 0; deg <= d - t; ++deg) {
        for (std::uint64_t m = 0; m < (std::uint64_t{1} << (n - t)); ++m) {
            if (static_cast<std::size_t>(std::popcount(m)) == deg) {
                masks.push_back((m << t) | prefix);
            }
        }
    }
    BitMatrix g(masks.size(), cols);
    for (std::size_t row = 0; row < masks.size(); ++row) {
        for (std::size_t point = 0; point < cols; ++point) {
            if ((point & masks[row]) == masks[row]) g.set(row, point, true);
        }
    }
    return LinearCode::from_generator(std::move(g));
}

WeiPoint wei_point(std::size_t n, std::size_t d, std::size_t t) {
    if (t > d) throw InputError("wei_point: t > d");
    if (d > n) throw InputError("wei_point: d > n");
    return WeiPoint{binomial_sum(n - t, d - t), pow2(n - t)};
}

SupportWeightResult dr_bruteforce(const LinearCode& code, std::size_t r,
                                  const Int& subspace_budget) {
    const std::size_t k = code.dimension();
    if (r > k) throw InputError("dr_bruteforce: r > k");
    if (r == 0) return SupportWeightResult{0, 0, WeightKind::exact, BitMatrix(0, code.block_length())};
    SubspaceEnumerator en(k, r, subspace_budget);
    std::size_t best = code.block_length() + 1;
    BitMatrix best_basis;
    while (auto combo = en.next()) {
        BitMatrix basis = matmul(*combo, code.generator());
        const std::size_t supp = popcount_words(basis.or_of_rows());
        if (supp < best) {
            best = supp;
            best_basis = std::move(basis);
        }
    }
    return SupportWeightResult{Int(static_cast<unsigned long>(r)),
                               Int(static_cast<unsigned long>(best)), WeightKind::exact,
                               std::move(best_basis)};
}

SupportWeightResult rm_dr_lower_bound(std::size_t n, std::size_t d, const Int& r) {
    if (r < 1 || r > rm_dimension(n, d)) throw InputError("rm_dr_lower_bound: r out of range");
    std::size_t tstar = d;
    for (std::size_t t = 0; t <= d; ++t) {
        if (binomial_sum(n - t, d - t) <= r) {
            tstar = t;
            break;
        }
    }
    return SupportWeightResult{r, pow2(n - tstar), WeightKind::lower_bound, std::nullopt};
}

SupportWeightResult dr_dispatch(const LinearCode& code, std::optional<RMParams> rm, const Int& r,
                                const Int& subspace_budget) {
    const std::size_t k = code.dimension();
    if (r < 0 || r > static_cast<unsigned long>(k)) throw InputError("dr_dispatch: r out of range");
    const std::size_t r_sz = static_cast<std::size_t>(r.get_ui());
    if (gaussian_binomial(k, r_sz) <= subspace_budget) {
        return dr_bruteforce(code, r_sz, subspace_budget);
    }
    if (!rm.has_value()) {
        throw ResourceLimitError("d_" + r.get_str() + " needs " +
                                 gaussian_binomial(k, r_sz).get_str() +
                                 " subspaces and no RM lower bound applies");
    }
    return rm_dr_lower_bound(rm->n, rm->d, r);
}

LinearCode load_code(std::istream& in, const std::string& name) {
    std::string line;
    std::size_t lineno = 0;
    std::size_t k = 0, n = 0;
    bool have_header = false;
    std::vector<std::string> rows;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!have_header) {
            std::istringstream hs(line);
            if (!(hs >> k >> n) || k == 0 || n == 0) {
                throw InputError(name + ":" + std::to_string(lineno) +
                                 ": expected header 'k N' with positive integers");
            }
            std::string extra;
            if (hs >> extra) {
                throw InputError(name + ":" + std::to_string(lineno) + ": trailing tokens after 'k N'");
            }
            have_header = true;
            continue;
        }
        if (rows.size() == k) {
            throw InputError(name + ":" + std::to_string(lineno) + ": more than k=" +
                             std::to_string(k) + " data rows");
        }
        if (line.size() != n) {
            throw InputError(name + ":" + std::to_string(lineno) + ": row has " +
                             std::to_string(line.size()) + " characters, expected N=" +
                             std::to_string(n));
        }
        for (char c : line) {
            if (c != '0' && c != '1') {
                throw InputError(name + ":" + std::to_string(lineno) + ": invalid character '" +
                                 std::string(1, c) + "' in row");
            }
        }
        rows.push_back(line);
    }
    if (!have_header) throw InputError(name + ": missing 'k N' header");
    if (rows.size() != k) {
        throw InputError(name + ": found " + std::to_string(rows.size()) + " rows, expected k=" +
                         std::to_string(k));
    }
    BitMatrix g(k, n);
    for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (rows[i][j] == '1') g.set(i, j, true);
        }
    }
    return LinearCode::from_generator(std::move(g));
}

LinearCode load_code(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());
    return load_code(in, path.string());
}

void save_code(const LinearCode& code, std::ostream& out) {
    out << code.dimension() << ' ' << code.block_length() << '\n';
    for (std::size_t i = 0; i < code.dimension(); ++i) {
        for (std::size_t j = 0; j < code.block_length(); ++j) {
            out << (code.generator().get(i, j) ? '1' : '0');
        }
        out << '\n';
    }
}

void save_code(const LinearCode& code, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path.string() + " for writing");
    save_code(code, out);
}

}  // namespace bect
