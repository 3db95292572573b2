#include "engelfn/func.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace engelfn {

namespace {

// Forward accumulation of the partial sums with lazy integer pairs: one
// canonicalization at the end keeps huge family terms (e.g. deep sylvester
// denominators) from forcing repeated big-number gcds.
struct Accumulator {
    Int A{0};        // y numerator over R * Dd
    Int R{1};        // product of r-denominators
    Int Dd{1};       // product of u-denominators, excluding the last digit
    Int Dn{1};       // product of u-numerators
    Int last_ud{1};  // u-denominator of the previous digit

    void feed(const FamilySpec& fam, const std::vector<Digit>& digits) {
        for (Digit c : digits) {
            const Rat rc = fam.r(c);
            const Rat uc = fam.u(c);
            A = A * (rc.get_den() * last_ud) + rc.get_num() * Dn * R;
            R *= rc.get_den();
            Dd *= last_ud;
            Dn *= uc.get_num();
            last_ud = uc.get_den();
        }
    }
};

AffineParts eval_prefix_lazy(const FamilySpec& fam, const std::vector<Digit>& digits) {
    Accumulator acc;
    acc.feed(fam, digits);
    AffineParts parts;
    parts.y = make_rat(acc.A, acc.R * acc.Dd);
    parts.d = make_rat(acc.Dn, acc.Dd * acc.last_ud);
    return parts;
}

RationalInterval ordered_interval(const Rat& y, const Rat& d) {
    return d >= 0 ? RationalInterval(y, y + d) : RationalInterval(y + d, y);
}

void check_caps(long long max_rank, Digit digit_cap) {
    if (max_rank < 1) throw std::invalid_argument("max_rank must be positive");
    if (digit_cap < 1) throw std::invalid_argument("digit_cap must be positive");
}

}  // namespace

AffineParts eval_prefix(const FamilySpec& fam, const std::vector<Digit>& digits) {
    return eval_prefix_lazy(fam, digits);
}

RawValue eval_e_rational_raw(const FamilySpec& fam, const std::vector<Digit>& prefix) {
    Accumulator acc;
    acc.feed(fam, prefix);
    // f = y + D = (A * last_ud + Dn * R) / (R * Dd * last_ud)
    RawValue out;
    out.num = acc.A * acc.last_ud + acc.Dn * acc.R;
    out.rden = std::move(acc.R);
    out.uden = acc.Dd * acc.last_ud;
    return out;
}

RawValue affine_image_raw(const FamilySpec& fam, Digit i, const RawValue& fx) {
    const Rat ri = fam.r(i);
    const Rat ui = fam.u(i);
    RawValue out;
    out.num = ri.get_num() * (ui.get_den() * (fx.rden * fx.uden)) +
              ui.get_num() * fx.num * ri.get_den();
    out.rden = ri.get_den() * fx.rden;
    out.uden = ui.get_den() * fx.uden;
    return out;
}

bool raw_equal(const RawValue& a, const RawValue& b) {
    if (a.rden == b.rden && a.uden == b.uden) return a.num == b.num;
    return a.num * (b.rden * b.uden) == b.num * (a.rden * a.uden);
}

Rat eval_at_e_rational(const FamilySpec& fam, const DigitStream& d) {
    if (!d.is_e_rational())
        throw std::invalid_argument("eval_at_e_rational: stream has no period (0)");
    AffineParts p = eval_prefix(fam, d.prefix());
    return p.y + p.d;
}

Rat eval_periodic(const FamilySpec& fam, const DigitStream& d) {
    if (!d.has_period()) throw std::invalid_argument("eval_periodic: stream is a truncation");
    AffineParts pre = eval_prefix(fam, d.prefix());
    AffineParts per = eval_prefix(fam, d.period());
    // One period maps the tail value t to per.y + per.d * t; |per.d| < 1 for
    // any family meeting the initial conditions, so the periodic tail is the
    // unique fixed point.
    if (rat_abs(per.d) >= 1)
        throw std::domain_error("eval_periodic: period map is not a contraction");
    Rat t = per.y / (1 - per.d);
    return pre.y + pre.d * t;
}

RationalInterval eval_enclosure(const FamilySpec& fam, const DigitStream& d, const Rat& eps) {
    if (eps <= 0) throw std::invalid_argument("eval_enclosure: eps must be positive");
    const Rat u_star = fam.u_star();
    const Rat scale = fam.r_star() / (1 - u_star);

    // depth >= 1 keeps the interval inside the first-symbol range bracket
    std::size_t depth = std::min<std::size_t>(1, d.available_digits());
    Rat bound = scale * (depth ? u_star : Rat(1));  // r* (u*)^depth / (1 - u*)
    while (bound > eps && depth < d.available_digits()) {
        ++depth;
        bound *= u_star;
    }
    AffineParts p = eval_prefix(fam, d.first_digits(depth));
    return ordered_interval(p.y, p.d);
}

std::pair<Rat, Rat> range_bracket(const FamilySpec& fam, Digit g1) {
    if (g1 < 0) throw std::invalid_argument("range_bracket: negative symbol");
    Rat lo = fam.r(g1), hi = fam.r(g1 - 1);
    if (lo > hi) std::swap(lo, hi);
    return {lo, hi};
}

bool range_bracket_contains(const FamilySpec& fam, Digit g1, const Rat& value) {
    auto [a, b] = range_bracket(fam, g1);
    const int s = sign(fam.u(g1));
    if (s > 0) return a < value && value <= b;
    if (s < 0) return a <= value && value < b;
    return value == a && a == b;
}

FunctionalEqVerdict functional_eq_check(const FamilySpec& fam, const DigitStream& d, Digit i) {
    if (i < 0) throw std::invalid_argument("functional_eq_check: negative symbol");
    const Rat ri = fam.r(i), ui = fam.u(i);
    if (d.has_period()) {
        const Rat lhs = eval_periodic(fam, d.insert_front(i));
        const Rat rhs = ri + ui * eval_periodic(fam, d);
        return {lhs == rhs, true};
    }
    AffineParts p = eval_prefix(fam, d.prefix());
    AffineParts q = eval_prefix(fam, d.insert_front(i).prefix());
    const RationalInterval lhs = ordered_interval(q.y, q.d);
    const RationalInterval rhs = ordered_interval(p.y, p.d).affine(ri, ui);
    return {lhs.intersects(rhs), false};
}

Rat cylinder_change(const FamilySpec& fam, const Cylinder& c) {
    Rat prod(1);
    for (Digit digit : c.base()) prod *= fam.u(digit);
    return prod;
}

CylinderValueRange cylinder_value_range(const FamilySpec& fam, const Cylinder& c) {
    if (c.rank() == 0)
        throw std::domain_error("cylinder_value_range: rank must be >= 1");
    AffineParts p = eval_prefix(fam, c.base());
    CylinderValueRange out;
    ProbePoint at_sup{c.supremum_point(), p.y + p.d, ProbeRole::none};
    ProbePoint at_inf{c.infimum_point(), p.y, ProbeRole::none};
    if (p.d == 0) {
        out.constant = true;
        out.min = out.max = p.y;
        at_sup.role = at_inf.role = ProbeRole::constancy_endpoint;
        at_sup.value = p.y;
        out.argmin = at_inf;
        out.argmax = at_sup;
        return out;
    }
    if (p.d > 0) {
        at_sup.role = ProbeRole::maximum;
        at_inf.role = ProbeRole::minimum;
        out.min = p.y;
        out.max = p.y + p.d;
        out.argmin = at_inf;
        out.argmax = at_sup;
    } else {
        at_sup.role = ProbeRole::minimum;
        at_inf.role = ProbeRole::maximum;
        out.min = p.y + p.d;
        out.max = p.y;
        out.argmin = at_sup;
        out.argmax = at_inf;
    }
    return out;
}

ExtremumType classify_extremum(const FamilySpec& fam, const Cylinder& base, Digit i) {
    if (i < 1) throw std::invalid_argument("classify_extremum: i must be >= 1");
    const Rat dm = cylinder_change(fam, base);
    if (dm == 0) return ExtremumType::none;
    const Rat ui = fam.u(i);
    if (sign(fam.u(i - 1)) * sign(ui) >= 0) return ExtremumType::none;
    return sign(dm) * sign(ui) > 0 ? ExtremumType::maximum : ExtremumType::minimum;
}

namespace {

void enumerate_extrema_rec(const FamilySpec& fam, const Cylinder& base, const AffineParts& parts,
                           int ranks_left, Digit digit_cap, std::vector<ProbePoint>& out) {
    if (parts.d != 0) {
        for (Digit i = 1; i <= digit_cap; ++i) {
            const ExtremumType t = classify_extremum(fam, base, i);
            if (t == ExtremumType::none) continue;
            std::vector<Digit> digits = base.base();
            digits.push_back(i);
            // f at the point base || i || (0) is y + D*(r_i + u_i) = y + D*r_{i-1}.
            out.push_back(ProbePoint{
                DigitStream::e_rational(std::move(digits)),
                Rat(parts.y + parts.d * fam.r(i - 1)),
                t == ExtremumType::maximum ? ProbeRole::maximum : ProbeRole::minimum});
        }
    }
    if (ranks_left == 0) return;
    for (Digit c = 0; c <= digit_cap; ++c) {
        AffineParts child{Rat(parts.y + fam.r(c) * parts.d), Rat(parts.d * fam.u(c))};
        if (child.d == 0) continue;  // constant subtree: no extrema below
        enumerate_extrema_rec(fam, base.child(c), child, ranks_left - 1, digit_cap, out);
    }
}

}  // namespace

std::vector<ProbePoint> enumerate_extrema(const FamilySpec& fam, int max_rank, Digit digit_cap) {
    check_caps(max_rank, digit_cap);
    if (!fam.has_negative_term()) return {};
    std::vector<ProbePoint> out;
    enumerate_extrema_rec(fam, Cylinder(), AffineParts{Rat(0), Rat(1)}, max_rank - 1, digit_cap, out);
    return out;
}

std::optional<WitnessPair> monotonicity_witness(const FamilySpec& fam, const Cylinder& c,
                                                Digit search_cap) {
    if (search_cap < 1) throw std::invalid_argument("monotonicity_witness: cap must be positive");
    const Rat d0 = cylinder_change(fam, c);
    if (d0 == 0) return std::nullopt;  // f constant on c

    std::optional<Cylinder> rising, falling;
    struct Node {
        Cylinder cyl;
        Rat change;
        Digit depth;
    };
    std::deque<Node> queue{{c, d0, 0}};
    while (!queue.empty() && !(rising && falling)) {
        Node n = std::move(queue.front());
        queue.pop_front();
        if (n.depth >= search_cap) continue;
        for (Digit digit = 0; digit <= search_cap; ++digit) {
            Rat ch = n.change * fam.u(digit);
            if (ch == 0) continue;
            Cylinder sub = n.cyl.child(digit);
            if (ch > 0 && !rising) rising = sub;
            if (ch < 0 && !falling) falling = sub;
            if (rising && falling) break;
            queue.push_back(Node{std::move(sub), std::move(ch), n.depth + 1});
        }
    }
    if (rising && falling) return WitnessPair{*rising, *falling};
    return std::nullopt;
}

namespace {

// Exact image of f over a rank>=1 cylinder: the half-open interval from the
// value at the (excluded) infimum to the value at the (included) supremum.
bool image_contains(const AffineParts& p, const Rat& y0) {
    if (p.d > 0) return p.y < y0 && y0 <= p.y + p.d;
    if (p.d < 0) return p.y + p.d <= y0 && y0 < p.y;
    return p.y == y0;
}

void level_probe_rec(const FamilySpec& fam, const Cylinder& cyl, const AffineParts& parts,
                     const Rat& y0, int max_rank, Digit digit_cap, std::vector<Cylinder>& out) {
    if (cyl.rank() > 0) {
        if (!image_contains(parts, y0)) return;
        if (parts.d == 0 || static_cast<int>(cyl.rank()) == max_rank) {
            out.push_back(cyl);  // constancy cylinders are reported whole
            return;
        }
    }
    for (Digit c = 0; c <= digit_cap; ++c) {
        AffineParts child{Rat(parts.y + fam.r(c) * parts.d), Rat(parts.d * fam.u(c))};
        level_probe_rec(fam, cyl.child(c), child, y0, max_rank, digit_cap, out);
    }
}

}  // namespace

std::vector<Cylinder> level_set_probe(const FamilySpec& fam, const Rat& y0, int max_rank,
                                      Digit digit_cap) {
    check_caps(max_rank, digit_cap);
    if (y0 < 0 || y0 > 1) throw std::domain_error("level_set_probe: y0 must lie in [0, 1]");
    std::vector<Cylinder> out;
    level_probe_rec(fam, Cylinder(), AffineParts{Rat(0), Rat(1)}, y0, max_rank, digit_cap, out);
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace engelfn
