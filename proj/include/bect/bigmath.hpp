#pragma once

#include <cstdint>
#include <string>

#include <gmpxx.h>

namespace bect {

using Int = mpz_class;
using Rat = mpq_class;

Int binomial(unsigned long n, unsigned long k);

// sum_{j=0}^{d} C(n, j)
Int binomial_sum(unsigned long n, unsigned long d);

Int pow2(unsigned long e);

// Exact sign of X^a - 2^E for X >= 1, a >= 0. E may be negative.
// Never materializes X^a: powers of two are compared on exponents, everything
// else goes through integer interval exponentiation at increasing precision
// (the sides can only be equal when X is a power of two, so this terminates).
int pow_cmp(const Int& x, const Int& a, const Int& e);

// floor(sqrt(n * log2(n))) for n >= 1, exact.
unsigned long floor_sqrt_n_log2n(unsigned long n);

// ceil(mult * sqrt(n * log2(n))) for n >= 1, exact.
unsigned long ceil_mul_sqrt_n_log2n(unsigned long mult, unsigned long n);

// Exact sign of m^2 - c^2 * n * log2(n); decides m >=< c*sqrt(n log2 n).
int cmp_sq_vs_nlog2n(unsigned long m, unsigned long c, unsigned long n);

// Parses a decimal literal ("0.25", "1e-3", "3") into an exact rational.
Rat parse_decimal(const std::string& text);

std::string to_decimal_string(const Rat& q, int digits = 17);

double to_double(const Rat& q);

}  // namespace bect
