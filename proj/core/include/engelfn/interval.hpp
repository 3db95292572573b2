#pragma once

#include "engelfn/rational.hpp"

namespace engelfn {

/// Closed interval [lo, hi] of exact rationals, used as a rigorous
/// enclosure for function values and integrals.
struct RationalInterval {
    Rat lo;
    Rat hi;

    RationalInterval() : lo(0), hi(0) {}
    RationalInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
        if (lo > hi) throw std::invalid_argument("RationalInterval: lo > hi");
    }
    static RationalInterval point(const Rat& v) { return {v, v}; }

    Rat width() const { return hi - lo; }
    Rat midpoint() const { return (lo + hi) / 2; }
    bool contains(const Rat& v) const { return lo <= v && v <= hi; }
    bool contains(const RationalInterval& o) const { return lo <= o.lo && o.hi <= hi; }
    bool intersects(const RationalInterval& o) const { return lo <= o.hi && o.lo <= hi; }

    /// Image under the affine map t -> c + s*t.
    RationalInterval affine(const Rat& c, const Rat& s) const {
        if (s >= 0) return {c + s * lo, c + s * hi};
        return {c + s * hi, c + s * lo};
    }

    bool operator==(const RationalInterval& o) const { return lo == o.lo && hi == o.hi; }

    std::string str() const { return "[" + rat_str(lo) + ", " + rat_str(hi) + "]"; }
};

}  // namespace engelfn
