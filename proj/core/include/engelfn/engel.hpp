#pragma once

#include "engelfn/cylinder.hpp"
#include "engelfn/digit_stream.hpp"
#include "engelfn/interval.hpp"
#include "engelfn/rational.hpp"

#include <variant>

namespace engelfn {

/// Unique E-representation of x in (0, 1], found with the classical Engel
/// recursion in exact arithmetic. A terminating expansion is emitted in the
/// trailing-zero (period (0)) form. A rational whose expansion does not
/// terminate within max_digits comes back as a finite truncation.
DigitStream digits_of(const Rat& x, std::size_t max_digits = 64);

/// First E-symbol g_1(x) of x in (0, 1].
Digit first_digit(const Rat& x);

/// Exact value of an E-rational stream (period (0)); throws otherwise.
Rat value_of_e_rational(const DigitStream& d);

/// Value of the point named by a digit stream.
///  - period (0): exact rational;
///  - other periods: such points are irrational, so a certified enclosure
///    is returned, produced by unrolling the period `unroll` digits past
///    the prefix;
///  - truncation: the closed hull [a_m, b_m] of the rank-m cylinder, which
///    brackets every completion.
std::variant<Rat, RationalInterval> value_of(const DigitStream& d, std::size_t unroll = 48);

/// theta(x) = (2 + g_1(x)) x - 1: merges the first two E-symbols.
/// Piecewise linear in x.
Rat theta(const Rat& x);

}  // namespace engelfn
