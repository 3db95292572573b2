#pragma once

#include "engelfn/rational.hpp"

#include <memory>
#include <string>
#include <vector>

namespace engelfn {

/// Geometric tail u_{j+i} = first * ratio^i of a custom family.
struct GeometricTail {
    Rat first;
    Rat ratio;  // |ratio| < 1
};

/// Zero-insertion layout: gap_before(k) zeros are placed before original
/// term k (prefix_gaps for the leading terms, repeat_gap afterwards).
/// gap_before(0) must be 0: zeros ahead of u_0 would push a tail sum to 1.
struct ZeroInsertRule {
    std::vector<long long> prefix_gaps;
    long long repeat_gap = 0;
};

struct ValidationIssue {
    std::string condition;  // which initial condition failed
    long long index;        // offending term index (-1 for global)
    std::string detail;
};

struct ValidationReport {
    bool ok = true;
    long long checked_depth = 0;
    std::vector<ValidationIssue> issues;
    std::vector<std::string> certificates;  // closed-form tail notes
    std::string str() const;
};

/// A parameter sequence (u_n) with exact tails r_n = sum_{i>n} u_i, subject
/// to: sum u_n = 1, |u_n| < 1, 0 < r_n < 1. Immutable and cheap to copy;
/// all accessors are pure and exact.
class FamilySpec {
  public:
    enum class Kind {
        sylvester,                // 1/u_0 = 2, 1/u_{n+1} = (1/u_n)(1/u_n - 1) + 1
        dyadic,                   // u_n = 2^-(n+1)
        dyadic_zero_interleaved,  // u_{2k} = 2^-(k+1), u_{2k+1} = 0
        signed_example4,          // 2/3, -1/6, then 2^-n
        two_scale,                // u_{2(k-1)} = a/2^k, u_{2k-1} = (1-a)/2^k, a in (1,2)
        custom,                   // exact prefix + geometric tail
        zero_inserted,            // zeros spliced into another family
    };

    static FamilySpec sylvester();
    static FamilySpec dyadic();
    static FamilySpec dyadic_zero_interleaved();
    static FamilySpec signed_example4();
    static FamilySpec two_scale(const Rat& a = Rat(3, 2));
    static FamilySpec custom(std::vector<Rat> prefix, GeometricTail tail);

    /// Builtin by name ("dyadic", "two_scale", ...); two_scale gets a = 3/2.
    static FamilySpec from_name(const std::string& name);
    static const std::vector<std::string>& builtin_names();

    /// JSON text form, e.g. {"kind":"two_scale","a":"3/2"} or
    /// {"kind":"custom","prefix":["2/3","-1/6"],"tail":{"first":"1/4","ratio":"1/2"}}.
    static FamilySpec from_json_text(const std::string& json_text);
    std::string to_json_text() const;

    Kind kind() const;
    std::string name() const;

    Rat u(long long n) const;  // n >= 0
    Rat r(long long n) const;  // n >= -1; r(-1) = 1
    Rat S(long long n) const { return 1 - r(n); }

    /// sup |u_n| and sup r_n, exact via per-kind monotonicity.
    Rat u_star() const;
    Rat r_star() const { return sup_r_from(0); }
    /// sup_{i >= n} r_i, exact.
    Rat sup_r_from(long long n) const;
    /// sum_{i > n} |u_i|, exact (n >= -1).
    Rat abs_u_tail(long long n) const;
    /// Certified upper bound for sum_{i > n} r_i (exact for geometric kinds).
    Rat r_tail_upper(long long n) const;

    bool all_nonnegative() const { return !has_negative_term(); }
    bool has_negative_term() const;
    bool has_zero_term() const;

    /// Largest index whose terms stay of tractable size in exact arithmetic
    /// (sylvester terms double in digit count per index).
    long long max_exact_index() const;

    /// Checks the initial conditions exactly for n <= check_depth (capped at
    /// max_exact_index) and certifies the infinite tail by closed form.
    ValidationReport validate(long long check_depth = 64) const;

    /// New family with zeros spliced in; tails at surviving slots coincide
    /// with the original ones. Throws on a malformed rule.
    FamilySpec insert_zeros(const ZeroInsertRule& rule) const;

    struct Impl;  // opaque; exposed for the implementation file only

  private:
    explicit FamilySpec(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
    std::shared_ptr<const Impl> impl_;
};

}  // namespace engelfn
