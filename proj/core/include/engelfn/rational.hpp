#pragma once

#include <gmpxx.h>

#include <limits>
#include <stdexcept>
#include <string>

namespace engelfn {

/// Exact arbitrary-precision rational. All arithmetic in this library is
/// carried out on canonical (lowest-terms) values of this type.
using Rat = mpq_class;
using Int = mpz_class;

/// Builds a canonical rational from an integer pair; accepts negative or
/// unnormalized input, rejects a zero denominator.
Rat make_rat(const Int& num, const Int& den);

/// Parses "p/q" or a bare integer "p". Whitespace around tokens is ignored.
Rat parse_rational(const std::string& text);

/// Canonical "p/q" (or "p" when the denominator is 1).
std::string rat_str(const Rat& q);

/// Plain decimal rendering with the given number of significant digits
/// (round half away from zero). Deterministic, no locale.
std::string decimal_str(const Rat& q, int significant_digits = 12);

inline int sign(const Rat& q) { return sgn(q); }

/// Int from a 64-bit value (gmpxx has no long long constructor).
inline Int int_of(long long v) {
    if (v >= std::numeric_limits<long>::min() && v <= std::numeric_limits<long>::max())
        return Int(static_cast<long>(v));
    return Int(std::to_string(v));
}
inline Rat rat_of(long long v) { return Rat(int_of(v)); }

/// base^e for integer e (e may be negative when base != 0).
Rat rat_pow(const Rat& base, long e);

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

}  // namespace engelfn
