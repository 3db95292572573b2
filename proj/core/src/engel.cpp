#include "engelfn/engel.hpp"

#include <stdexcept>

namespace engelfn {

namespace {

void check_domain(const Rat& x) {
    if (x <= 0 || x > 1) throw std::domain_error("expected a rational in (0, 1], got " + rat_str(x));
}

// ceil(1/rem) for rem in (0, 1].
Int next_factor(const Rat& rem) {
    Int a;
    mpz_cdiv_q(a.get_mpz_t(), rem.get_den().get_mpz_t(), rem.get_num().get_mpz_t());
    return a;
}

Digit digit_from(const Int& value) {
    if (!mpz_fits_slong_p(value.get_mpz_t()))
        throw std::domain_error("E-symbol exceeds the representable digit range");
    return static_cast<Digit>(mpz_get_si(value.get_mpz_t()));
}

}  // namespace

DigitStream digits_of(const Rat& x, std::size_t max_digits) {
    check_domain(x);
    if (max_digits == 0) throw std::invalid_argument("digits_of: max_digits must be positive");

    // Classical recursion: a_n = ceil(1/rem), rem <- rem*a_n - 1. The
    // numerator of rem strictly decreases, so a rational either terminates
    // (rem*a_n == 1) or runs past max_digits; no other periodicity can occur.
    std::vector<Digit> digits;
    digits.reserve(max_digits);
    Rat rem = x;
    Int q_prev(2);
    for (std::size_t n = 0; n < max_digits; ++n) {
        Int a = next_factor(rem);
        if (rem * Rat(a) == 1) {
            // terminating step: the infinite form repeats q = a + 1 from here
            digits.push_back(digit_from(Int(a + 1 - q_prev)));
            return DigitStream::e_rational(std::move(digits));
        }
        digits.push_back(digit_from(Int(a - q_prev)));
        rem = rem * Rat(a) - 1;
        q_prev = a;
    }
    return DigitStream::truncation(std::move(digits));
}

Digit first_digit(const Rat& x) {
    check_domain(x);
    Int a = next_factor(x);
    if (x * Rat(a) == 1) return digit_from(Int(a - 1));
    return digit_from(Int(a - 2));
}

Rat value_of_e_rational(const DigitStream& d) {
    if (!d.is_e_rational())
        throw std::invalid_argument("value_of_e_rational: stream has no period (0)");
    return Cylinder(d.prefix()).b();
}

std::variant<Rat, RationalInterval> value_of(const DigitStream& d, std::size_t unroll) {
    if (d.is_e_rational()) return value_of_e_rational(d);
    if (d.has_period()) {
        // Irrational point: bracket it by a deep cylinder around the stream.
        const std::size_t depth = d.prefix().size() + std::max<std::size_t>(unroll, 2 * d.period().size());
        Cylinder c(d.first_digits(depth));
        return RationalInterval(c.a(), c.b());
    }
    Cylinder c(d.prefix());
    return RationalInterval(c.a(), c.b());
}

Rat theta(const Rat& x) {
    return rat_of(2 + first_digit(x)) * x - 1;
}

}  // namespace engelfn
