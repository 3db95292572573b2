#include "engelfn/family.hpp"

#include <json.hpp>

#include <algorithm>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace engelfn {

namespace {

// Sylvester sequence 2, 3, 7, 43, 1807, ...; s_{n+1} = s_n^2 - s_n + 1.
// Digit count doubles per index (s_21 already has ~427k digits), so indices
// are capped hard.
constexpr long long kSylvesterCap = 21;

const Int& sylvester_number(long long n) {
    if (n < 0) throw std::invalid_argument("sylvester_number: negative index");
    if (n > kSylvesterCap + 1)
        throw std::domain_error("sylvester term s_" + std::to_string(n) +
                                " exceeds tractable size (digit count doubles per index)");
    static std::vector<Int> cache{Int(2)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<long long>(cache.size()) <= n) {
        const Int& s = cache.back();
        cache.push_back(s * s - s + 1);
    }
    return cache[static_cast<std::size_t>(n)];
}

Rat pow2_inv(long long k) {  // 2^-k, k >= 0
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k));
    return make_rat(1, p);
}

}  // namespace

std::string ValidationReport::str() const {
    std::ostringstream os;
    os << (ok ? "valid" : "INVALID") << " (checked depth " << checked_depth << ")\n";
    for (const auto& i : issues)
        os << "  violated " << i.condition << " at index " << i.index << ": " << i.detail << "\n";
    for (const auto& c : certificates) os << "  certified: " << c << "\n";
    return os.str();
}

struct FamilySpec::Impl {
    Kind kind;
    Rat a;                       // two_scale
    std::vector<Rat> prefix;     // custom
    GeometricTail tail;          // custom
    std::vector<Rat> r_prefix;   // custom: r(0..j-1) precomputed
    std::shared_ptr<const FamilySpec> inner;  // zero_inserted
    ZeroInsertRule rule;                      // zero_inserted
    long long rule_prefix_total = 0;

    // --- zero-insertion position arithmetic -------------------------------
    long long gap_before(long long k) const {
        const auto L = static_cast<long long>(rule.prefix_gaps.size());
        return k < L ? rule.prefix_gaps[static_cast<std::size_t>(k)] : rule.repeat_gap;
    }
    // Index of original term k in the new sequence.
    long long pos(long long k) const {
        const auto L = static_cast<long long>(rule.prefix_gaps.size());
        if (k < L) {
            long long c = 0;
            for (long long j = 0; j <= k; ++j) c += rule.prefix_gaps[static_cast<std::size_t>(j)];
            return k + c;
        }
        return k + rule_prefix_total + (k - L + 1) * rule.repeat_gap;
    }
    // Largest k with pos(k) <= n (exists for n >= 0 since pos(0) == 0).
    long long last_orig_leq(long long n) const {
        const auto L = static_cast<long long>(rule.prefix_gaps.size());
        if (L > 0 && n < pos(L - 1)) {
            long long k = 0;
            while (k + 1 < L && pos(k + 1) <= n) ++k;
            return k;
        }
        const long long step = 1 + rule.repeat_gap;
        const long long c = rule_prefix_total + (1 - L) * rule.repeat_gap;
        long long k = (n - c) / step;
        if (k < L) k = L > 0 ? L - 1 : 0;
        while (pos(k + 1) <= n) ++k;  // guard against flooring slack
        while (k > 0 && pos(k) > n) --k;
        return k;
    }
    bool is_original_slot(long long n, long long* orig) const {
        const long long k = last_orig_leq(n);
        if (pos(k) == n) {
            *orig = k;
            return true;
        }
        return false;
    }
};

namespace {

std::shared_ptr<FamilySpec::Impl> make_impl(FamilySpec::Kind k) {
    auto impl = std::make_shared<FamilySpec::Impl>();
    impl->kind = k;
    return impl;
}

}  // namespace

FamilySpec FamilySpec::sylvester() { return FamilySpec(make_impl(Kind::sylvester)); }
FamilySpec FamilySpec::dyadic() { return FamilySpec(make_impl(Kind::dyadic)); }
FamilySpec FamilySpec::dyadic_zero_interleaved() {
    return FamilySpec(make_impl(Kind::dyadic_zero_interleaved));
}
FamilySpec FamilySpec::signed_example4() { return FamilySpec(make_impl(Kind::signed_example4)); }

FamilySpec FamilySpec::two_scale(const Rat& a) {
    if (a <= 1 || a >= 2) throw std::domain_error("two_scale: parameter a must lie in (1, 2)");
    auto impl = make_impl(Kind::two_scale);
    impl->a = a;
    return FamilySpec(impl);
}

FamilySpec FamilySpec::custom(std::vector<Rat> prefix, GeometricTail tail) {
    if (rat_abs(tail.ratio) >= 1)
        throw std::domain_error("custom family: |tail ratio| must be < 1 for a convergent tail");
    auto impl = make_impl(Kind::custom);
    impl->prefix = std::move(prefix);
    impl->tail = std::move(tail);
    // r(j-1) = tail sum; walk the prefix backwards for the earlier tails.
    const auto j = static_cast<long long>(impl->prefix.size());
    if (j > 0) {
        impl->r_prefix.assign(static_cast<std::size_t>(j), Rat(0));
        impl->r_prefix[static_cast<std::size_t>(j - 1)] = impl->tail.first / (1 - impl->tail.ratio);
        for (long long k = j - 1; k > 0; --k)
            impl->r_prefix[static_cast<std::size_t>(k - 1)] =
                impl->r_prefix[static_cast<std::size_t>(k)] + impl->prefix[static_cast<std::size_t>(k)];
    }
    return FamilySpec(impl);
}

FamilySpec FamilySpec::from_name(const std::string& name) {
    if (name == "sylvester") return sylvester();
    if (name == "dyadic") return dyadic();
    if (name == "dyadic_zero_interleaved") return dyadic_zero_interleaved();
    if (name == "signed_example4") return signed_example4();
    if (name == "two_scale") return two_scale();
    throw std::invalid_argument("unknown family name '" + name + "'");
}

const std::vector<std::string>& FamilySpec::builtin_names() {
    static const std::vector<std::string> names{
        "sylvester", "dyadic", "dyadic_zero_interleaved", "signed_example4", "two_scale"};
    return names;
}

FamilySpec::Kind FamilySpec::kind() const { return impl_->kind; }

std::string FamilySpec::name() const {
    switch (impl_->kind) {
        case Kind::sylvester: return "sylvester";
        case Kind::dyadic: return "dyadic";
        case Kind::dyadic_zero_interleaved: return "dyadic_zero_interleaved";
        case Kind::signed_example4: return "signed_example4";
        case Kind::two_scale: return "two_scale(" + rat_str(impl_->a) + ")";
        case Kind::custom: return "custom";
        case Kind::zero_inserted: return "insert_zeros(" + impl_->inner->name() + ")";
    }
    return "?";
}

Rat FamilySpec::u(long long n) const {
    if (n < 0) throw std::invalid_argument("FamilySpec::u: negative index");
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
            return make_rat(1, sylvester_number(n));
        case Kind::dyadic:
            return pow2_inv(n + 1);
        case Kind::dyadic_zero_interleaved:
            return n % 2 == 0 ? pow2_inv(n / 2 + 1) : Rat(0);
        case Kind::signed_example4:
            if (n == 0) return Rat(2, 3);
            if (n == 1) return Rat(-1, 6);
            return pow2_inv(n);
        case Kind::two_scale:
            return n % 2 == 0 ? Rat(m.a * pow2_inv(n / 2 + 1))
                              : Rat((1 - m.a) * pow2_inv((n + 1) / 2));
        case Kind::custom: {
            const auto j = static_cast<long long>(m.prefix.size());
            if (n < j) return m.prefix[static_cast<std::size_t>(n)];
            return m.tail.first * rat_pow(m.tail.ratio, n - j);
        }
        case Kind::zero_inserted: {
            long long k;
            return m.is_original_slot(n, &k) ? m.inner->u(k) : Rat(0);
        }
    }
    throw std::logic_error("unreachable");
}

Rat FamilySpec::r(long long n) const {
    if (n < -1) throw std::invalid_argument("FamilySpec::r: index below -1");
    if (n == -1) return Rat(1);
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
            return make_rat(1, sylvester_number(n + 1) - 1);
        case Kind::dyadic:
            return pow2_inv(n + 1);
        case Kind::dyadic_zero_interleaved:
            return pow2_inv(n / 2 + 1);
        case Kind::signed_example4:
            if (n == 0) return Rat(1, 3);
            if (n == 1) return Rat(1, 2);
            return pow2_inv(n);
        case Kind::two_scale:
            // odd n = 2k-1 -> 1/2^k; even n = 2(k-1) -> (2-a)/2^k
            return n % 2 == 1 ? pow2_inv((n + 1) / 2) : Rat((2 - m.a) * pow2_inv(n / 2 + 1));
        case Kind::custom: {
            const auto j = static_cast<long long>(m.prefix.size());
            if (n >= j - 1) return m.tail.first * rat_pow(m.tail.ratio, n + 1 - j) / (1 - m.tail.ratio);
            return m.r_prefix[static_cast<std::size_t>(n)];
        }
        case Kind::zero_inserted:
            return m.inner->r(m.last_orig_leq(n));
    }
    throw std::logic_error("unreachable");
}

Rat FamilySpec::u_star() const {
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
        case Kind::dyadic:
        case Kind::dyadic_zero_interleaved:
            return Rat(1, 2);
        case Kind::signed_example4:
            return Rat(2, 3);
        case Kind::two_scale:
            return Rat(m.a / 2);
        case Kind::custom: {
            Rat best = rat_abs(m.tail.first);  // tail terms decrease in modulus
            for (const Rat& p : m.prefix) best = std::max(best, rat_abs(p));
            return best;
        }
        case Kind::zero_inserted:
            return m.inner->u_star();
    }
    throw std::logic_error("unreachable");
}

Rat FamilySpec::sup_r_from(long long n) const {
    if (n < 0) throw std::invalid_argument("FamilySpec::sup_r_from: negative index");
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
        case Kind::dyadic:
        case Kind::dyadic_zero_interleaved:
            return r(n);  // nonincreasing tails
        case Kind::signed_example4:
            return n == 0 ? Rat(1, 2) : r(n);  // r_1 = 1/2 dominates r_0 = 1/3
        case Kind::two_scale:
            return n % 2 == 1 ? r(n) : r(n + 1);  // odd tails dominate their pair
        case Kind::custom: {
            const auto j = static_cast<long long>(m.prefix.size());
            if (n >= j - 1) return r(n);  // geometric, decreasing
            Rat best = r(n);
            for (long long k = n + 1; k <= j - 1; ++k) best = std::max(best, r(k));
            return best;
        }
        case Kind::zero_inserted:
            return m.inner->sup_r_from(m.last_orig_leq(n));
    }
    throw std::logic_error("unreachable");
}

Rat FamilySpec::abs_u_tail(long long n) const {
    if (n < -1) throw std::invalid_argument("FamilySpec::abs_u_tail: index below -1");
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
        case Kind::dyadic:
        case Kind::dyadic_zero_interleaved:
            return r(n);  // nonnegative terms
        case Kind::signed_example4:
            if (n == -1) return Rat(4, 3);
            if (n == 0) return Rat(2, 3);
            return pow2_inv(n);
        case Kind::two_scale:
            // odd n = 2k-1 -> (2a-1)/2^k; even n = 2k-2 -> (3a-2)/2^k
            return n % 2 != 0 ? Rat((2 * m.a - 1) * pow2_inv((n + 1) / 2))
                              : Rat((3 * m.a - 2) * pow2_inv(n / 2 + 1));
        case Kind::custom: {
            const auto j = static_cast<long long>(m.prefix.size());
            Rat sum(0);
            for (long long k = std::max<long long>(n + 1, 0); k < j; ++k)
                sum += rat_abs(m.prefix[static_cast<std::size_t>(k)]);
            const long long t = std::max<long long>(n + 1 - j, 0);
            sum += rat_abs(m.tail.first) * rat_pow(rat_abs(m.tail.ratio), t) / (1 - rat_abs(m.tail.ratio));
            return sum;
        }
        case Kind::zero_inserted:
            return m.inner->abs_u_tail(n < 0 ? -1 : m.last_orig_leq(n));
    }
    throw std::logic_error("unreachable");
}

Rat FamilySpec::r_tail_upper(long long n) const {
    if (n < 0) throw std::invalid_argument("FamilySpec::r_tail_upper: negative index");
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
            // ratios r_{i+1}/r_i = 1/s_{i+1} <= 1/3
            return Rat(3, 2) * r(n + 1);
        case Kind::dyadic:
            return r(n);  // exact: sum_{i>n} 2^-(i+1) = 2^-(n+1)
        case Kind::dyadic_zero_interleaved:
            // pairs r_{2k} + r_{2k+1} = 2^-k
            return n % 2 == 1 ? pow2_inv((n - 1) / 2) : Rat(3) * pow2_inv(n / 2 + 1);
        case Kind::signed_example4:
            return n == 0 ? Rat(1) : pow2_inv(n);
        case Kind::two_scale:
            // pairs r_{2k-2} + r_{2k-1} = (3-a)/2^k
            return n % 2 == 1 ? Rat((3 - m.a) * pow2_inv((n + 1) / 2))
                              : Rat((4 - m.a) * pow2_inv(n / 2 + 1));
        case Kind::custom: {
            if (m.tail.ratio <= 0 || m.tail.first <= 0)
                throw std::domain_error("r_tail_upper: custom tail not positive decreasing");
            const auto j = static_cast<long long>(m.prefix.size());
            Rat sum(0);
            for (long long k = n + 1; k <= j - 2; ++k) sum += r(k);
            const long long from = std::max<long long>(n + 1, j - 1);
            // sum_{i>=from} first*ratio^{i+1-j}/(1-ratio)
            sum += m.tail.first * rat_pow(m.tail.ratio, from + 1 - j) /
                   ((1 - m.tail.ratio) * (1 - m.tail.ratio));
            return sum;
        }
        case Kind::zero_inserted: {
            long long g = m.rule.repeat_gap;
            for (long long x : m.rule.prefix_gaps) g = std::max(g, x);
            const long long k = m.last_orig_leq(n);
            return rat_of(1 + g) * (m.inner->r(k) + m.inner->r_tail_upper(k));
        }
    }
    throw std::logic_error("unreachable");
}

bool FamilySpec::has_negative_term() const {
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
        case Kind::dyadic:
        case Kind::dyadic_zero_interleaved:
            return false;
        case Kind::signed_example4:
        case Kind::two_scale:
            return true;
        case Kind::custom: {
            for (const Rat& p : m.prefix)
                if (p < 0) return true;
            if (m.tail.first < 0) return true;
            return m.tail.first > 0 && m.tail.ratio < 0;
        }
        case Kind::zero_inserted:
            return m.inner->has_negative_term();
    }
    throw std::logic_error("unreachable");
}

bool FamilySpec::has_zero_term() const {
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
        case Kind::dyadic:
        case Kind::signed_example4:
        case Kind::two_scale:
            return false;
        case Kind::dyadic_zero_interleaved:
            return true;
        case Kind::custom: {
            for (const Rat& p : m.prefix)
                if (p == 0) return true;
            return m.tail.first == 0 || m.tail.ratio == 0;
        }
        case Kind::zero_inserted: {
            if (m.inner->has_zero_term()) return true;
            if (m.rule.repeat_gap > 0) return true;
            for (long long g : m.rule.prefix_gaps)
                if (g > 0) return true;
            return false;
        }
    }
    throw std::logic_error("unreachable");
}

long long FamilySpec::max_exact_index() const {
    const Impl& m = *impl_;
    switch (m.kind) {
        case Kind::sylvester:
            return kSylvesterCap;
        case Kind::zero_inserted: {
            const long long inner_cap = m.inner->max_exact_index();
            return inner_cap >= (1 << 20) ? inner_cap : m.pos(inner_cap);
        }
        default:
            return 1 << 20;
    }
}

ValidationReport FamilySpec::validate(long long check_depth) const {
    if (check_depth < 1) throw std::invalid_argument("validate: check_depth must be positive");
    const Impl& m = *impl_;
    ValidationReport rep;
    rep.checked_depth = std::min(check_depth, max_exact_index() - 1);
    // keep doubly-exponential families snappy: their terms past ~s_20 are huge
    for (const Impl* p = &m; p != nullptr;
         p = p->kind == Kind::zero_inserted ? p->inner->impl_.get() : nullptr) {
        if (p->kind == Kind::sylvester) rep.checked_depth = std::min(rep.checked_depth, 20LL);
    }

    auto fail = [&rep](std::string cond, long long idx, std::string detail) {
        rep.ok = false;
        rep.issues.push_back({std::move(cond), idx, std::move(detail)});
    };

    // Condition (2): the series sums to 1. Closed form for the builtins,
    // exact prefix + geometric tail for custom.
    if (m.kind == Kind::custom) {
        Rat total(0);
        for (const Rat& p : m.prefix) total += p;
        total += m.tail.first / (1 - m.tail.ratio);
        if (total != 1)
            fail("sum_equals_one", -1, "series sums to " + rat_str(total) + ", expected 1");
        else
            rep.certificates.push_back("sum = prefix + first/(1-ratio) = 1 exactly");
        if (!(m.tail.first > 0 && m.tail.ratio > 0 && m.tail.ratio < 1))
            fail("tail_in_unit_interval", static_cast<long long>(m.prefix.size()),
                 "geometric tail must have first > 0 and ratio in (0,1) to keep every r_n in (0,1)");
        else
            rep.certificates.push_back("tail r_n positive and decreasing (geometric)");
    } else if (m.kind == Kind::zero_inserted) {
        ValidationReport inner_rep = m.inner->validate(check_depth);
        if (!inner_rep.ok) {
            for (auto& i : inner_rep.issues) fail("inner:" + i.condition, i.index, i.detail);
        }
        rep.certificates.push_back("zero insertion preserves the initial conditions");
    } else {
        rep.certificates.push_back("sum = 1 by closed form for builtin '" + name() + "'");
    }

    Rat prev_r = r(-1);
    for (long long n = 0; n <= rep.checked_depth; ++n) {
        const Rat un = u(n);
        const Rat rn = r(n);
        if (!(rat_abs(un) < 1))
            fail("abs_u_below_one", n, "|u_" + std::to_string(n) + "| = " + rat_str(rat_abs(un)));
        if (!(rn > 0 && rn < 1))
            fail("tail_in_unit_interval", n, "r_" + std::to_string(n) + " = " + rat_str(rn));
        if (rn != prev_r - un)
            fail("tail_recursion", n,
                 "r_n != r_{n-1} - u_n: " + rat_str(rn) + " vs " + rat_str(prev_r - un));
        prev_r = rn;
    }
    return rep;
}

FamilySpec FamilySpec::insert_zeros(const ZeroInsertRule& rule) const {
    for (long long g : rule.prefix_gaps)
        if (g < 0) throw std::invalid_argument("insert_zeros: negative gap");
    if (rule.repeat_gap < 0) throw std::invalid_argument("insert_zeros: negative gap");
    const long long gap0 = rule.prefix_gaps.empty() ? rule.repeat_gap : rule.prefix_gaps.front();
    if (gap0 != 0)
        throw std::invalid_argument(
            "insert_zeros: zeros ahead of u_0 are malformed (the tail before the first term "
            "would equal 1)");

    auto impl = make_impl(Kind::zero_inserted);
    impl->inner = std::make_shared<const FamilySpec>(*this);
    impl->rule = rule;
    for (long long g : rule.prefix_gaps) impl->rule_prefix_total += g;
    return FamilySpec(impl);
}

// ---------------------------------------------------------------------------
// JSON config form

namespace {

using nlohmann::json;

json tail_to_json(const GeometricTail& t) {
    return json{{"first", rat_str(t.first)}, {"ratio", rat_str(t.ratio)}};
}

}  // namespace

std::string FamilySpec::to_json_text() const {
    const Impl& m = *impl_;
    json j;
    switch (m.kind) {
        case Kind::two_scale:
            j = json{{"kind", "two_scale"}, {"a", rat_str(m.a)}};
            break;
        case Kind::custom: {
            json prefix = json::array();
            for (const Rat& p : m.prefix) prefix.push_back(rat_str(p));
            j = json{{"kind", "custom"}, {"prefix", prefix}, {"tail", tail_to_json(m.tail)}};
            break;
        }
        case Kind::zero_inserted: {
            j = json{{"kind", "insert_zeros"},
                     {"inner", json::parse(m.inner->to_json_text())},
                     {"prefix_gaps", m.rule.prefix_gaps},
                     {"repeat_gap", m.rule.repeat_gap}};
            break;
        }
        default:
            j = json{{"kind", name()}};
    }
    return j.dump();
}

FamilySpec FamilySpec::from_json_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("family config: bad JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        throw std::invalid_argument("family config: expected an object with a \"kind\" string");
    const std::string kind = j["kind"].get<std::string>();
    if (kind == "two_scale") {
        return j.contains("a") ? two_scale(parse_rational(j["a"].get<std::string>())) : two_scale();
    }
    if (kind == "custom") {
        std::vector<Rat> prefix;
        if (j.contains("prefix"))
            for (const auto& p : j["prefix"]) prefix.push_back(parse_rational(p.get<std::string>()));
        if (!j.contains("tail"))
            throw std::invalid_argument("family config: custom family requires a \"tail\"");
        GeometricTail tail{parse_rational(j["tail"].at("first").get<std::string>()),
                           parse_rational(j["tail"].at("ratio").get<std::string>())};
        return custom(std::move(prefix), std::move(tail));
    }
    if (kind == "insert_zeros") {
        FamilySpec inner = from_json_text(j.at("inner").dump());
        ZeroInsertRule rule;
        if (j.contains("prefix_gaps")) rule.prefix_gaps = j["prefix_gaps"].get<std::vector<long long>>();
        if (j.contains("repeat_gap")) rule.repeat_gap = j["repeat_gap"].get<long long>();
        return inner.insert_zeros(rule);
    }
    return from_name(kind);
}

}  // namespace engelfn
