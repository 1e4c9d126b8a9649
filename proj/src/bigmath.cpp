#include "bect/bigmath.hpp"

#include <cctype>
#include <cstddef>

#include "bect/errors.hpp"

namespace bect {

Int binomial(unsigned long n, unsigned long k) {
    Int r;
    if (k > n) return 0;
    mpz_bin_uiui(r.get_mpz_t(), n, k);
    return r;
}

Int binomial_sum(unsigned long n, unsigned long d) {
    Int total = 0;
    Int term;
    for (unsigned long j = 0; j <= d && j <= n; ++j) {
        mpz_bin_uiui(term.get_mpz_t(), n, j);
        total += term;
    }
    return total;
}

Int pow2(unsigned long e) {
    Int r = 1;
    mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), e);
    return r;
}

namespace {

// One directed-rounding bound on X^a, as (mantissa, exp2) with
// mantissa * 2^exp2 <= X^a (round_down) or >= X^a (round_up).
// Mantissas are renormalized to `prec` bits after every multiply, so the
// intermediate numbers stay small no matter how large a is.
struct Scaled {
    Int mant;
    Int exp2;
};

void normalize(Scaled& v, unsigned long prec, bool round_up) {
    const std::size_t bits = mpz_sizeinbase(v.mant.get_mpz_t(), 2);
    if (bits <= prec) return;
    const unsigned long shift = static_cast<unsigned long>(bits - prec);
    Int shifted;
    if (round_up) {
        mpz_cdiv_q_2exp(shifted.get_mpz_t(), v.mant.get_mpz_t(), shift);
    } else {
        mpz_fdiv_q_2exp(shifted.get_mpz_t(), v.mant.get_mpz_t(), shift);
    }
    v.mant = shifted;
    v.exp2 += shift;
}

Scaled pow_bound(const Int& base, const Int& a, unsigned long prec, bool round_up) {
    Scaled acc{1, 0};
    const std::size_t nbits = mpz_sizeinbase(a.get_mpz_t(), 2);
    for (std::size_t i = nbits; i-- > 0;) {
        acc.mant *= acc.mant;
        acc.exp2 *= 2;
        normalize(acc, prec, round_up);
        if (mpz_tstbit(a.get_mpz_t(), i)) {
            acc.mant *= base;
            normalize(acc, prec, round_up);
        }
    }
    return acc;
}

// sign of (mant * 2^exp2) - 2^e, for mant >= 1.
int cmp_scaled_pow2(const Scaled& v, const Int& e) {
    const Int bits = static_cast<long>(mpz_sizeinbase(v.mant.get_mpz_t(), 2));
    // 2^(bits-1+exp2) <= value < 2^(bits+exp2)
    if (v.exp2 + bits - 1 > e) return 1;
    if (v.exp2 + bits <= e) return -1;
    // e - exp2 is within [bits-1, bits], a small shift.
    const Int t = e - v.exp2;
    Int rhs = 1;
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), t.get_ui());
    return cmp(v.mant, rhs);
}

}  // namespace

int pow_cmp(const Int& x, const Int& a, const Int& e) {
    if (x < 1 || a < 0) throw InputError("pow_cmp requires x >= 1 and a >= 0");
    if (x == 1 || a == 0) {
        // lhs = 1
        if (e > 0) return -1;
        return e == 0 ? 0 : 1;
    }
    // Strip factors of two so equality can only happen on the exact branch.
    const unsigned long v = mpz_scan1(x.get_mpz_t(), 0);
    Int odd;
    mpz_fdiv_q_2exp(odd.get_mpz_t(), x.get_mpz_t(), v);
    Int rem = e - a * static_cast<long>(v);
    if (odd == 1) {
        if (rem > 0) return -1;
        return rem == 0 ? 0 : 1;
    }
    if (rem <= 0) return 1;  // odd^a >= 3 > 2^rem
    for (unsigned long prec = 192;; prec *= 2) {
        const Scaled lo = pow_bound(odd, a, prec, /*round_up=*/false);
        const Scaled hi = pow_bound(odd, a, prec, /*round_up=*/true);
        if (cmp_scaled_pow2(hi, rem) < 0) return -1;
        if (cmp_scaled_pow2(lo, rem) > 0) return 1;
        if (prec > (1ul << 24)) throw ResourceLimitError("pow_cmp: undecided at 2^24 bits");
    }
}

int cmp_sq_vs_nlog2n(unsigned long m, unsigned long c, unsigned long n) {
    // m^2 >=< c^2 * n * log2(n)  <=>  2^(m^2) >=< n^(c^2 * n)
    const Int lhs_exp = Int(m) * Int(m);
    const Int a = Int(c) * Int(c) * Int(n);
    return -pow_cmp(Int(n), a, lhs_exp);
}

unsigned long floor_sqrt_n_log2n(unsigned long n) {
    if (n == 0) throw InputError("floor_sqrt_n_log2n requires n >= 1");
    unsigned long lo = 0, hi = n;  // sqrt(n log2 n) <= n for all n >= 1
    while (lo < hi) {
        const unsigned long mid = lo + (hi - lo + 1) / 2;
        if (cmp_sq_vs_nlog2n(mid, 1, n) <= 0) {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    return lo;
}

unsigned long ceil_mul_sqrt_n_log2n(unsigned long mult, unsigned long n) {
    if (n == 0) throw InputError("ceil_mul_sqrt_n_log2n requires n >= 1");
    unsigned long lo = 0, hi = mult * n;
    while (lo < hi) {
        const unsigned long mid = lo + (hi - lo) / 2;
        if (cmp_sq_vs_nlog2n(mid, mult, n) >= 0) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    return lo;
}

Rat parse_decimal(const std::string& text) {
    std::size_t pos = 0;
    const std::size_t len = text.size();
    bool negative = false;
    if (pos < len && (text[pos] == '+' || text[pos] == '-')) {
        negative = (text[pos] == '-');
        ++pos;
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false, seen_digit = false;
    for (; pos < len; ++pos) {
        const char ch = text[pos];
        if (std::isdigit(static_cast<unsigned char>(ch))) {
            digits += ch;
            seen_digit = true;
            if (seen_dot) ++frac_digits;
        } else if (ch == '.' && !seen_dot) {
            seen_dot = true;
        } else {
            break;
        }
    }
    if (!seen_digit) throw InputError("not a decimal literal: '" + text + "'");
    long exp10 = 0;
    if (pos < len && (text[pos] == 'e' || text[pos] == 'E')) {
        ++pos;
        bool exp_neg = false;
        if (pos < len && (text[pos] == '+' || text[pos] == '-')) {
            exp_neg = (text[pos] == '-');
            ++pos;
        }
        if (pos >= len) throw InputError("truncated exponent in '" + text + "'");
        for (; pos < len && std::isdigit(static_cast<unsigned char>(text[pos])); ++pos) {
            exp10 = exp10 * 10 + (text[pos] - '0');
        }
        if (exp_neg) exp10 = -exp10;
    }
    if (pos != len) throw InputError("trailing characters in decimal literal: '" + text + "'");

    Int num(digits.empty() ? "0" : digits, 10);  // base fixed: leading zeros are not octal
    if (negative) num = -num;
    Int den = 1;
    const long net = exp10 - frac_digits;
    Int ten10 = 10;
    if (net >= 0) {
        Int scale;
        mpz_pow_ui(scale.get_mpz_t(), ten10.get_mpz_t(), static_cast<unsigned long>(net));
        num *= scale;
    } else {
        mpz_pow_ui(den.get_mpz_t(), ten10.get_mpz_t(), static_cast<unsigned long>(-net));
    }
    Rat q(num, den);
    q.canonicalize();
    return q;
}

std::string to_decimal_string(const Rat& q, int digits) {
    mpf_class f(q, 256);
    mp_exp_t exp = 0;
    std::string mant = f.get_str(exp, 10, static_cast<std::size_t>(digits));
    if (mant.empty()) return "0";
    bool neg = mant[0] == '-';
    std::string body = neg ? mant.substr(1) : mant;
    std::string out = neg ? "-" : "";
    out += "0.";
    out += body;
    out += "e";
    out += std::to_string(exp);
    return out;
}

double to_double(const Rat& q) {
    // mpq_get_d truncates; divide in double for round-to-nearest when the
    // parts fit, which covers every probability grid this library touches
    const Int& num = q.get_num();
    const Int& den = q.get_den();
    if (mpz_sizeinbase(num.get_mpz_t(), 2) <= 52 && mpz_sizeinbase(den.get_mpz_t(), 2) <= 52) {
        return num.get_d() / den.get_d();
    }
    return q.get_d();
}

}  // namespace bect
