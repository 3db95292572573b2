#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

namespace engelfn {

/// Digit of an E-representation: a non-negative integer from the infinite
/// alphabet {0, 1, 2, ...}.
using Digit = long long;

/// A (possibly eventually periodic) sequence of E-symbols g_1 g_2 ...
/// identifying a point of (0, 1].
///
/// Two shapes:
///  - periodic: finite prefix followed by a non-empty period repeated
///    forever. Period (0) marks an E-rational number.
///  - truncation: an explicit finite cut of an unknown infinite stream;
///    the truncation depth is the prefix length.
///
/// Periodic streams are kept canonical (primitive period, minimal prefix),
/// so equality of canonical forms is equality of digit sequences.
class DigitStream {
  public:
    /// Empty truncation (depth 0).
    DigitStream() = default;

    /// Finite truncation of depth digits.size().
    static DigitStream truncation(std::vector<Digit> digits);
    /// Eventually periodic stream; period must be non-empty.
    static DigitStream periodic(std::vector<Digit> prefix, std::vector<Digit> period);
    /// E-rational stream: prefix then period (0).
    static DigitStream e_rational(std::vector<Digit> prefix);

    bool has_period() const { return !period_.empty(); }
    bool is_e_rational() const { return period_.size() == 1 && period_[0] == 0; }
    const std::vector<Digit>& prefix() const { return prefix_; }
    const std::vector<Digit>& period() const { return period_; }

    /// Digits available: prefix length for truncations, unbounded otherwise.
    std::size_t available_digits() const {
        return has_period() ? std::numeric_limits<std::size_t>::max() : prefix_.size();
    }
    std::size_t truncation_depth() const { return prefix_.size(); }

    /// g_{n+1} (0-based index into the infinite stream).
    Digit digit(std::size_t n) const;
    /// First m digits, unrolling the period as needed.
    std::vector<Digit> first_digits(std::size_t m) const;
    /// sigma_m = g_1 + ... + g_m.
    long long sigma(std::size_t m) const;

    /// Shift operator: drops g_1. Rotates the period when the prefix is
    /// empty; throws on an empty truncation.
    DigitStream shift() const;
    /// Prepends digit i (the map delta_i on symbols).
    DigitStream insert_front(Digit i) const;

    /// Text form: "g1 g2 ... gk (p1 ... pj)"; the parenthesized period is
    /// omitted for truncations. The all-period stream renders as "(...)".
    std::string str() const;
    static DigitStream parse(const std::string& text);

    bool operator==(const DigitStream& o) const {
        return prefix_ == o.prefix_ && period_ == o.period_;
    }

  private:
    void canonicalize();

    std::vector<Digit> prefix_;
    std::vector<Digit> period_;  // empty <=> truncation
};

}  // namespace engelfn
