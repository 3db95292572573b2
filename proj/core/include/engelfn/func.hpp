#pragma once

#include "engelfn/cylinder.hpp"
#include "engelfn/digit_stream.hpp"
#include "engelfn/family.hpp"
#include "engelfn/interval.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace engelfn {

/// f(x) = r_{g_1} + sum_{k>=2} r_{g_k} prod_{i<k} u_{g_i}, evaluated from
/// the E-symbols of x. Exact on periodic streams, rigorously enclosed
/// otherwise.

enum class ExtremumType { maximum, minimum, none };
enum class ProbeRole { maximum, minimum, none, constancy_endpoint };

/// An E-rational point with its exact f-value.
struct ProbePoint {
    DigitStream point;
    Rat value;
    ProbeRole role = ProbeRole::none;
};

/// Partial data of the series over a digit prefix c_1..c_m:
/// y = r_{c_1} + sum_{k=2}^m r_{c_k} prod_{i<k} u_{c_i},  d = prod u_{c_i}.
/// f restricted to the cylinder with this base is y + d * f(shifted x).
struct AffineParts {
    Rat y;
    Rat d;
};
AffineParts eval_prefix(const FamilySpec& fam, const std::vector<Digit>& digits);

/// Uncanonicalized f-value num / (rden * uden), where rden and uden are the
/// products of the r- and u-denominators over the digits. Skipping the
/// reduction keeps all big-integer work linear even when a digit indexes a
/// huge family term; two values over the same digit multiset land on
/// literally equal denominators, so comparing them needs no gcd.
struct RawValue {
    Int num;
    Int rden;
    Int uden;
};
RawValue eval_e_rational_raw(const FamilySpec& fam, const std::vector<Digit>& prefix);
/// r_i + u_i * fx, arranged over the denominator (rd_i * fx.rden, ud_i * fx.uden).
RawValue affine_image_raw(const FamilySpec& fam, Digit i, const RawValue& fx);
bool raw_equal(const RawValue& a, const RawValue& b);

/// Exact f at an E-rational point (stream with period (0)): y_m + D_m.
Rat eval_at_e_rational(const FamilySpec& fam, const DigitStream& d);

/// Exact f at any periodic stream; the periodic tail is resolved as the
/// fixed point of its one-period affine map.
Rat eval_periodic(const FamilySpec& fam, const DigitStream& d);

/// Rigorous enclosure of f. The truncation depth m is chosen from the
/// certified tail bound r* (u*)^m / (1 - u*) <= eps; the returned interval
/// is the exact image bracket [y_m, y_m + D_m] (ordered) at that depth.
/// For a finite truncation shallower than the required depth, the enclosure
/// over all completions is returned; its width |D_m| is then a hard floor
/// no eps can beat.
RationalInterval eval_enclosure(const FamilySpec& fam, const DigitStream& d, const Rat& eps);

/// First-symbol range bracket: (min, max) of {r_{g1}, r_{g1-1}}; f(x) never
/// leaves it.
std::pair<Rat, Rat> range_bracket(const FamilySpec& fam, Digit g1);

/// Sharp range membership by the sign of u_{g1}: (a, b] when u_{g1} > 0,
/// [a, b) when u_{g1} < 0, the single point r_{g1} when u_{g1} = 0.
bool range_bracket_contains(const FamilySpec& fam, Digit g1, const Rat& value);

/// Verdict of the functional equation f(delta_i(x)) = r_i + u_i f(x).
struct FunctionalEqVerdict {
    bool holds;
    bool exact;  // true when both sides were evaluated exactly
};
FunctionalEqVerdict functional_eq_check(const FamilySpec& fam, const DigitStream& d, Digit i);

/// Change of f on a cylinder: f at the supremum minus f at the infimum;
/// equals prod u_{c_i} (computed as the product).
Rat cylinder_change(const FamilySpec& fam, const Cylinder& c);

/// Extremal values of f on a cylinder, attained at its endpoints. When the
/// digit product vanishes, f is constant there and min == max.
struct CylinderValueRange {
    Rat min;
    Rat max;
    ProbePoint argmin;
    ProbePoint argmax;
    bool constant = false;
};
CylinderValueRange cylinder_value_range(const FamilySpec& fam, const Cylinder& c);

/// Classifies the E-rational point with base || i || (0), i >= 1: an
/// extremum iff u_{i-1} u_i < 0 and the base digit product is nonzero;
/// a maximum when D_m u_i > 0.
ExtremumType classify_extremum(const FamilySpec& fam, const Cylinder& base, Digit i);

/// All extrema with base rank < max_rank and digits (incl. i) <= digit_cap,
/// in lexicographic base order. Empty for families with no negative terms.
std::vector<ProbePoint> enumerate_extrema(const FamilySpec& fam, int max_rank, Digit digit_cap);

/// Pair of sub-cylinders on which f changes with strictly opposite signs,
/// certifying non-monotonicity of f on `c`; searched over sub-bases with
/// digits <= search_cap and depth <= search_cap.
struct WitnessPair {
    Cylinder rising;   // positive change
    Cylinder falling;  // negative change
};
std::optional<WitnessPair> monotonicity_witness(const FamilySpec& fam, const Cylinder& c,
                                                Digit search_cap);

/// Disjoint cylinders certified to meet the level f^{-1}(y0). A cylinder
/// (a, b] is reported when y0 lies in the exact image of f over it, which
/// is the half-open value interval from f(a-point) (excluded) to
/// f(b-point) (included); constancy cylinders whose value equals y0 are
/// reported whole at their own rank.
std::vector<Cylinder> level_set_probe(const FamilySpec& fam, const Rat& y0, int max_rank,
                                      Digit digit_cap);

}  // namespace engelfn
