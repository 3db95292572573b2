#include "engelfn/measure.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace engelfn {

namespace {

void require_nonnegative(const FamilySpec& fam, const char* who) {
    if (fam.has_negative_term())
        throw std::domain_error(std::string(who) + ": family has negative terms, f is not a CDF");
}

}  // namespace

Rat XiSampler::default_eps() {
    return make_rat(1, Int(1) << 40);
}

XiSampler::XiSampler(FamilySpec spec, std::uint64_t seed, Rat cylinder_eps)
    : spec_(std::move(spec)), eps_(std::move(cylinder_eps)), rng_(seed) {
    require_nonnegative(spec_, "XiSampler");
    if (eps_ <= 0 || eps_ >= 1) throw std::invalid_argument("XiSampler: eps must lie in (0, 1)");
}

XiSampler XiSampler::for_worker(const FamilySpec& spec, std::uint64_t seed,
                                std::uint64_t worker_index, Rat cylinder_eps) {
    // splitmix-style mix keeps nearby (seed, worker) pairs far apart
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (worker_index + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return XiSampler(spec, z ^ (z >> 31), std::move(cylinder_eps));
}

Rat XiSampler::uniform128() {
    Int k(rng_());
    k <<= 64;
    k |= Int(rng_());
    return make_rat(k, Int(1) << 128);
}

const Rat& XiSampler::threshold(std::size_t n) {
    while (thresholds_.size() <= n) thresholds_.push_back(spec_.S(static_cast<long long>(thresholds_.size())));
    return thresholds_[n];
}

Digit XiSampler::next_symbol() {
    const Rat v = uniform128();
    // v < 1 - 2^-128 + 2^-128 and S_n -> 1, so the scan always lands.
    for (std::size_t n = 0;; ++n) {
        if (v < threshold(n)) return static_cast<Digit>(n);
        if (n > 4096) throw std::logic_error("XiSampler: threshold scan ran away");
    }
}

XiSampler::Sample XiSampler::next() {
    Cylinder cyl;
    while (cyl.length() >= eps_) cyl = cyl.child(next_symbol());
    return Sample{cyl.b(), cyl};
}

Rat empirical_cdf_distance(const FamilySpec& fam, long n_samples, long n_grid,
                           std::uint64_t seed) {
    require_nonnegative(fam, "empirical_cdf_distance");
    if (n_samples < 1) throw std::invalid_argument("empirical_cdf_distance: need n_samples >= 1");
    if (n_grid < 1) throw std::invalid_argument("empirical_cdf_distance: need n_grid >= 1");

    // E-rational grid: cylinder endpoints of rank <= 3 with bounded digits,
    // so every f value on the grid is exact.
    const Digit cap = std::min<Digit>(12, fam.max_exact_index() - 1);
    std::map<Rat, Rat> grid;  // x -> f(x)
    auto add = [&](const Cylinder& c) {
        grid.emplace(c.b(), eval_at_e_rational(fam, c.supremum_point()));
    };
    for (Digit c1 = 0; c1 <= cap; ++c1) {
        add(Cylinder({c1}));
        if (static_cast<long>(grid.size()) < n_grid)
            for (Digit c2 = 0; c2 <= cap; ++c2) add(Cylinder({c1, c2}));
    }
    for (Digit c1 = 0; c1 <= cap && static_cast<long>(grid.size()) < n_grid; ++c1)
        for (Digit c2 = 0; c2 <= cap; ++c2)
            for (Digit c3 = 0; c3 <= cap; ++c3) add(Cylinder({c1, c2, c3}));

    XiSampler sampler(fam, seed);
    std::vector<Rat> samples;
    samples.reserve(static_cast<std::size_t>(n_samples));
    for (long i = 0; i < n_samples; ++i) samples.push_back(sampler.next().x);
    std::sort(samples.begin(), samples.end());

    Rat dist(0);
    const Rat n(n_samples);
    for (const auto& [x, fx] : grid) {
        // F(x) = P(xi < x): strictly-below count.
        const auto below = std::lower_bound(samples.begin(), samples.end(), x) - samples.begin();
        const Rat emp = Rat(static_cast<long>(below)) / n;
        dist = std::max(dist, rat_abs(emp - fx));
    }
    return dist;
}

IntegralEnclosure integral_enclosure(const FamilySpec& fam, int max_rank, Digit breadth) {
    if (max_rank < 1) throw std::invalid_argument("integral_enclosure: max_rank must be positive");
    if (breadth < 0) throw std::invalid_argument("integral_enclosure: breadth must be >= 0");

    // Normalized by the shift identity, the sums depend on a cylinder only
    // through its digit sum sigma and the remaining depth, which collapses
    // the exponential refinement tree into a small DP table.
    //   g(s, 0) = [0, 1]
    //   g(s, d) = sum_c ratio(s,c) * (r_c + u_c * g(s+c, d-1)) + rem(s) * [0, rbar]
    const Rat rbar = fam.sup_r_from(breadth);
    std::vector<Rat> u_c, r_c;
    for (Digit c = 0; c <= breadth; ++c) {
        u_c.push_back(fam.u(c));
        r_c.push_back(fam.r(c));
    }

    std::vector<std::map<long long, RationalInterval>> memo(static_cast<std::size_t>(max_rank) + 1);
    auto g = [&](auto&& self, long long s, int depth) -> RationalInterval {
        if (depth == 0) return RationalInterval(Rat(0), Rat(1));
        auto it = memo[depth].find(s);
        if (it != memo[depth].end()) return it->second;
        Rat lo(0), hi(0);
        for (Digit c = 0; c <= breadth; ++c) {
            const long long s1 = s + c;
            const Rat ratio = make_rat(int_of(1 + s), int_of(2 + s1) * int_of(1 + s1));
            const auto& uc = u_c[static_cast<std::size_t>(c)];
            const auto& rc = r_c[static_cast<std::size_t>(c)];
            if (uc == 0) {
                lo += ratio * rc;
                hi += ratio * rc;
                continue;
            }
            const RationalInterval sub = self(self, s1, depth - 1);
            if (uc > 0) {
                lo += ratio * (rc + uc * sub.lo);
                hi += ratio * (rc + uc * sub.hi);
            } else {
                lo += ratio * (rc + uc * sub.hi);
                hi += ratio * (rc + uc * sub.lo);
            }
        }
        const Rat rem = make_rat(int_of(1 + s), int_of(s + breadth + 2));
        hi += rem * rbar;  // remainder values lie in (0, rbar]
        RationalInterval out(lo, hi);
        memo[depth].emplace(s, out);
        return out;
    };

    const RationalInterval total = g(g, 0, max_rank);
    IntegralEnclosure out;
    out.lower = total.lo;
    out.upper = total.hi;
    out.rank_used = max_rank;
    out.breadth_used = breadth;
    return out;
}

IntegralEstimate integral_upper_estimate(const FamilySpec& fam, long long n_terms) {
    if (n_terms < 1) throw std::invalid_argument("integral_upper_estimate: need n_terms >= 1");
    const long long last = std::min(n_terms, fam.max_exact_index()) - 1;

    Rat su(0), sr(0);
    for (long long n = 0; n <= last; ++n) {
        su += fam.u(n) / rat_of(2 + n);
        sr += fam.r(n) / rat_of(2 + n);
    }
    const Rat su_tail = fam.abs_u_tail(last) / rat_of(3 + last);
    const Rat sr_tail = fam.r_tail_upper(last) / rat_of(3 + last);

    IntegralEstimate out;
    out.terms_used = last + 1;
    const Rat den_lo = 1 - (su + su_tail);
    const Rat den_hi = 1 - (su - su_tail);
    if (den_lo <= 0) return out;  // bound not certifiable
    out.applicable = true;
    out.bound = RationalInterval(sr / den_hi, (sr + sr_tail) / den_lo);
    return out;
}

MeanIdentityResult mean_identity_check(const FamilySpec& fam, long n_samples, std::uint64_t seed,
                                       int rank, Digit breadth) {
    if (n_samples < 1) throw std::invalid_argument("mean_identity_check: need n_samples >= 1");
    const IntegralEnclosure enc = integral_enclosure(fam, rank, breadth);

    XiSampler sampler(fam, seed);
    Rat sum(0);
    for (long i = 0; i < n_samples; ++i) sum += sampler.next().x;
    const Rat mean = sum / Rat(n_samples);

    Int root;
    mpz_sqrt(root.get_mpz_t(), int_of(n_samples).get_mpz_t());

    MeanIdentityResult out;
    out.one_minus_mean = 1 - mean;
    out.enclosure_mid = (enc.lower + enc.upper) / 2;
    out.abs_diff = rat_abs(out.one_minus_mean - out.enclosure_mid);
    out.tolerance = 3 * (enc.width() + make_rat(1, root));
    out.pass = out.abs_diff <= out.tolerance;
    return out;
}

std::vector<Rat> derivative_ratio_diagnostic(const FamilySpec& fam, const DigitStream& d,
                                             int max_rank) {
    if (max_rank < 1) throw std::invalid_argument("derivative_ratio_diagnostic: max_rank >= 1");
    if (d.available_digits() < static_cast<std::size_t>(max_rank))
        throw std::invalid_argument("derivative_ratio_diagnostic: stream shallower than max_rank");
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(max_rank));
    for (int m = 1; m <= max_rank; ++m) {
        Cylinder c(d.first_digits(static_cast<std::size_t>(m)));
        out.push_back(cylinder_change(fam, c) / c.length());
    }
    return out;
}

}  // namespace engelfn
