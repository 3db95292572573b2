#include "engelfn/digit_stream.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace engelfn {

namespace {

void check_digits(const std::vector<Digit>& ds) {
    for (Digit d : ds)
        if (d < 0) throw std::invalid_argument("DigitStream: negative digit");
}

// Smallest d dividing period.size() such that the period is d-periodic.
std::size_t primitive_length(const std::vector<Digit>& period) {
    const std::size_t n = period.size();
    for (std::size_t d = 1; d < n; ++d) {
        if (n % d != 0) continue;
        bool ok = true;
        for (std::size_t i = d; i < n && ok; ++i) ok = period[i] == period[i - d];
        if (ok) return d;
    }
    return n;
}

}  // namespace

DigitStream DigitStream::truncation(std::vector<Digit> digits) {
    check_digits(digits);
    DigitStream d;
    d.prefix_ = std::move(digits);
    return d;
}

DigitStream DigitStream::periodic(std::vector<Digit> prefix, std::vector<Digit> period) {
    if (period.empty()) throw std::invalid_argument("DigitStream: empty period");
    check_digits(prefix);
    check_digits(period);
    DigitStream d;
    d.prefix_ = std::move(prefix);
    d.period_ = std::move(period);
    d.canonicalize();
    return d;
}

DigitStream DigitStream::e_rational(std::vector<Digit> prefix) {
    return periodic(std::move(prefix), {0});
}

void DigitStream::canonicalize() {
    period_.resize(primitive_length(period_));
    // Fold prefix digits that merely repeat the tail of the period.
    while (!prefix_.empty() && prefix_.back() == period_.back()) {
        prefix_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

Digit DigitStream::digit(std::size_t n) const {
    if (n < prefix_.size()) return prefix_[n];
    if (period_.empty()) throw std::out_of_range("DigitStream: digit beyond truncation depth");
    return period_[(n - prefix_.size()) % period_.size()];
}

std::vector<Digit> DigitStream::first_digits(std::size_t m) const {
    std::vector<Digit> out;
    out.reserve(m);
    for (std::size_t i = 0; i < m; ++i) out.push_back(digit(i));
    return out;
}

long long DigitStream::sigma(std::size_t m) const {
    long long s = 0;
    for (std::size_t i = 0; i < m; ++i) s += digit(i);
    return s;
}

DigitStream DigitStream::shift() const {
    DigitStream d = *this;
    if (!d.prefix_.empty()) {
        d.prefix_.erase(d.prefix_.begin());
    } else if (!d.period_.empty()) {
        std::rotate(d.period_.begin(), d.period_.begin() + 1, d.period_.end());
    } else {
        throw std::domain_error("DigitStream::shift: empty truncation");
    }
    if (!d.period_.empty()) d.canonicalize();
    return d;
}

DigitStream DigitStream::insert_front(Digit i) const {
    if (i < 0) throw std::invalid_argument("DigitStream: negative digit");
    DigitStream d = *this;
    d.prefix_.insert(d.prefix_.begin(), i);
    if (!d.period_.empty()) d.canonicalize();
    return d;
}

std::string DigitStream::str() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < prefix_.size(); ++i) {
        if (i) os << ' ';
        os << prefix_[i];
    }
    if (!period_.empty()) {
        if (!prefix_.empty()) os << ' ';
        os << '(';
        for (std::size_t i = 0; i < period_.size(); ++i) {
            if (i) os << ' ';
            os << period_[i];
        }
        os << ')';
    }
    return os.str();
}

DigitStream DigitStream::parse(const std::string& text) {
    std::vector<Digit> prefix, period;
    bool in_period = false, period_seen = false;
    std::string tok;
    auto flush = [&](std::vector<Digit>& dst) {
        if (tok.empty()) return;
        std::size_t pos = 0;
        Digit d = std::stoll(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument("DigitStream::parse: bad digit '" + tok + "'");
        dst.push_back(d);
        tok.clear();
    };
    for (char c : text) {
        if (c == '(') {
            if (in_period || period_seen) throw std::invalid_argument("DigitStream::parse: stray '('");
            flush(prefix);
            in_period = true;
        } else if (c == ')') {
            if (!in_period) throw std::invalid_argument("DigitStream::parse: stray ')'");
            flush(period);
            in_period = false;
            period_seen = true;
        } else if (c == ' ' || c == '\t' || c == ',') {
            flush(in_period ? period : prefix);
        } else if (c >= '0' && c <= '9') {
            if (period_seen) throw std::invalid_argument("DigitStream::parse: digits after period");
            tok.push_back(c);
        } else {
            throw std::invalid_argument(std::string("DigitStream::parse: bad character '") + c + "'");
        }
    }
    if (in_period) throw std::invalid_argument("DigitStream::parse: unterminated period");
    flush(prefix);
    if (period_seen) {
        if (period.empty()) throw std::invalid_argument("DigitStream::parse: empty period");
        return periodic(std::move(prefix), std::move(period));
    }
    return truncation(std::move(prefix));
}

}  // namespace engelfn
