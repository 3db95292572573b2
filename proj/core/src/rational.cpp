#include "engelfn/rational.hpp"

#include <cctype>
#include <sstream>

namespace engelfn {

Rat make_rat(const Int& num, const Int& den) {
    if (den == 0) throw std::invalid_argument("make_rat: zero denominator");
    Rat q(num, den);
    q.canonicalize();
    return q;
}

Rat parse_rational(const std::string& text) {
    std::string s;
    s.reserve(text.size());
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    if (s.empty()) throw std::invalid_argument("parse_rational: empty string");
    try {
        const auto slash = s.find('/');
        if (slash != std::string::npos) {
            return make_rat(Int(s.substr(0, slash), 10), Int(s.substr(slash + 1), 10));
        }
        // decimal / scientific forms, converted exactly: -1.25e-3 = -125/10^5
        long exp10 = 0;
        auto epos = s.find_first_of("eE");
        if (epos != std::string::npos) {
            exp10 = std::stol(s.substr(epos + 1));
            s.erase(epos);
        }
        const auto dot = s.find('.');
        if (dot != std::string::npos) {
            exp10 -= static_cast<long>(s.size() - dot - 1);
            s.erase(dot, 1);
        }
        if (s.empty() || s == "-" || s == "+")
            throw std::invalid_argument("parse_rational: empty mantissa");
        Int mant(s, 10);
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 < 0 ? -exp10 : exp10));
        return exp10 < 0 ? make_rat(mant, p) : Rat(mant * p);
    } catch (const std::exception&) {
        throw std::invalid_argument("parse_rational: malformed rational '" + text + "'");
    }
}

std::string rat_str(const Rat& q) { return q.get_str(); }

std::string decimal_str(const Rat& q, int significant_digits) {
    if (significant_digits < 1) significant_digits = 1;
    if (q == 0) return "0";

    const bool neg = q < 0;
    Int num = abs(q.get_num());
    Int den = q.get_den();

    // Decimal exponent: number of digits in floor(|q|) or, below one,
    // minus the count of leading fractional zeros. Estimated from digit
    // counts and corrected by O(1) comparisons, so huge exponents stay cheap.
    long exp10 = 0;
    Int ipart = num / den;
    if (ipart > 0) {
        exp10 = static_cast<long>(mpz_sizeinbase(ipart.get_mpz_t(), 10));
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(exp10 - 1));
        if (ipart < p) --exp10;  // sizeinbase may overshoot by one
    } else {
        // smallest k >= 0 with num * 10^(k+1) >= den; then exp10 = -k
        long k = std::max<long>(static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 10)) -
                                    static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 10)) - 1,
                                0);
        Int p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k + 1));
        while (num * p < den) {
            p *= 10;
            ++k;
        }
        while (k > 0 && num * p >= den * 10) {
            mpz_divexact_ui(p.get_mpz_t(), p.get_mpz_t(), 10);
            --k;
        }
        exp10 = -k;
    }

    // Scale so that exactly `significant_digits` digits sit left of the
    // point, then round the remainder half away from zero.
    long shift = significant_digits - exp10;
    Int scaled_num = num, scaled_den = den;
    Int p;
    if (shift >= 0) {
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(shift));
        scaled_num *= p;
    } else {
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(-shift));
        scaled_den *= p;
    }
    Int digits, rem;
    mpz_fdiv_qr(digits.get_mpz_t(), rem.get_mpz_t(), scaled_num.get_mpz_t(), scaled_den.get_mpz_t());
    if (rem * 2 >= scaled_den) ++digits;

    std::string ds = digits.get_str();
    if (static_cast<long>(ds.size()) > significant_digits) {
        // rounding produced an extra leading digit (e.g. 999.96 -> 1000)
        ++exp10;
        ds.pop_back();  // trailing digit is 0 after such a carry
    }

    // Assemble a plain decimal (no exponent notation for moderate ranges).
    std::string out;
    if (exp10 >= 1 && exp10 <= 18) {
        if (static_cast<long>(ds.size()) <= exp10) ds.append(exp10 - ds.size(), '0');
        out = ds.substr(0, exp10);
        std::string frac = ds.substr(exp10);
        while (!frac.empty() && frac.back() == '0') frac.pop_back();
        if (!frac.empty()) out += "." + frac;
    } else if (exp10 <= 0 && exp10 >= -4) {
        out = "0.";
        out.append(-exp10, '0');
        while (!ds.empty() && ds.back() == '0') ds.pop_back();
        if (ds.empty()) ds = "0";
        out += ds;
    } else {
        // scientific: d.ddd e(exp10-1)
        std::string mant = ds;
        while (mant.size() > 1 && mant.back() == '0') mant.pop_back();
        out = mant.substr(0, 1);
        if (mant.size() > 1) out += "." + mant.substr(1);
        out += "e" + std::to_string(exp10 - 1);
    }
    return neg ? "-" + out : out;
}

Rat rat_pow(const Rat& base, long e) {
    if (e == 0) return Rat(1);
    if (base == 0 && e < 0) throw std::domain_error("rat_pow: 0 to negative power");
    Rat b = e < 0 ? Rat(1 / base) : base;
    unsigned long n = static_cast<unsigned long>(e < 0 ? -e : e);
    Rat acc(1);
    while (n) {
        if (n & 1) acc *= b;
        b *= b;
        n >>= 1;
    }
    return acc;
}

}  // namespace engelfn
