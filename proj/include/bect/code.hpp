#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

#include "bect/bigmath.hpp"
#include "bect/bitmatrix.hpp"

namespace bect {

struct RMParams {
    std::size_t n = 0;  // number of variables; block length 2^n
    std::size_t d = 0;  // degree
};

// A binary linear code given by a full-row-rank generator matrix.
class LinearCode {
public:
    static LinearCode from_generator(BitMatrix generator);

    const BitMatrix& generator() const { return generator_; }
    std::size_t block_length() const { return generator_.cols(); }
    std::size_t dimension() const { return generator_.rows(); }

private:
    explicit LinearCode(BitMatrix g) : generator_(std::move(g)) {}
    BitMatrix generator_;
};

// Generator of the Reed-Muller code RM(n, d): one row per monomial of degree
// <= d, ordered by degree then lexicographically by variable set; column j
// evaluates at the point whose bit i (LSB first) is the value of x_{i+1}.
LinearCode rm_code(RMParams params, std::size_t matrix_bit_budget = std::size_t{1} << 34);

Int rm_dimension(std::size_t n, std::size_t d);

inline constexpr std::size_t kDefaultDminExponentBudget = 22;

// Minimum Hamming weight over all 2^k - 1 nonzero codewords (equals d_1).
std::size_t min_distance_bruteforce(const LinearCode& code,
                                    std::size_t exponent_budget = kDefaultDminExponentBudget);

// The subcode of RM(n, d) spanned by (x_1...x_t) * m over monomials m of
// degree <= d - t in x_{t+1}..x_n. Smallest support for its dimension.
LinearCode wei_subcode(std::size_t n, std::size_t d, std::size_t t);

struct WeiPoint {
    Int dimension;  // C(n-t, <= d-t)
    Int support;    // 2^(n-t), exact: see wei_subcode's vanishing pattern
};
WeiPoint wei_point(std::size_t n, std::size_t d, std::size_t t);

enum class WeightKind { exact, lower_bound };

struct SupportWeightResult {
    Int r;                             // subcode dimension the value refers to
    Int value;                         // d_r(C) or a lower bound for it
    WeightKind kind = WeightKind::exact;
    std::optional<BitMatrix> witness;  // exact only: r x N basis achieving it
};

// Exact d_r(C) by enumerating every r-dimensional subcode.
SupportWeightResult dr_bruteforce(const LinearCode& code, std::size_t r,
                                  const Int& subspace_budget = Int(100000000));

// 2^(n - t*) with t* = min{t in [0, d] : C(n-t, <= d-t) <= r}; a valid lower
// bound on d_r(RM(n, d)) since d_r is nondecreasing in r and the Wei subcode
// S_{t*} has dimension <= r and support 2^(n - t*).
SupportWeightResult rm_dr_lower_bound(std::size_t n, std::size_t d, const Int& r);

// Exact oracle when the subspace count fits the budget, RM lower bound
// otherwise (requires rm params for the fallback).
SupportWeightResult dr_dispatch(const LinearCode& code, std::optional<RMParams> rm, const Int& r,
                                const Int& subspace_budget = Int(100000000));

// Text format: optional '#' comment lines, a "k N" header line, then k lines
// of exactly N characters from {0,1}. No trailing whitespace is written.
LinearCode load_code(std::istream& in, const std::string& name = "<stream>");
LinearCode load_code(const std::filesystem::path& path);
void save_code(const LinearCode& code, std::ostream& out);
void save_code(const LinearCode& code, const std::filesystem::path& path);

}  // namespace bect
