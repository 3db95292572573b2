#pragma once

#include "engelfn/cylinder.hpp"
#include "engelfn/family.hpp"
#include "engelfn/func.hpp"
#include "engelfn/interval.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

namespace engelfn {

/// Draws xi = Delta^E_{eta_1 eta_2 ...} whose E-symbols are i.i.d. with
/// P(eta = n) = u_n; f is then the distribution function of xi. Requires a
/// family with no negative terms.
///
/// Symbols come from inverse-CDF draws: a 128-bit dyadic uniform variate is
/// compared exactly against the thresholds S_n, so no rounding can slip a
/// draw across a boundary. Deterministic for a fixed seed.
class XiSampler {
  public:
    XiSampler(FamilySpec spec, std::uint64_t seed, Rat cylinder_eps = default_eps());

    struct Sample {
        Rat x;              // E-rational representative (the cylinder's supremum)
        Cylinder cylinder;  // containing cylinder with length < cylinder_eps
    };

    Digit next_symbol();
    Sample next();

    /// Independent substream for parallel workers: (seed, worker) pairs map
    /// to distinct generator states, deterministically.
    static XiSampler for_worker(const FamilySpec& spec, std::uint64_t seed,
                                std::uint64_t worker_index, Rat cylinder_eps = default_eps());

    static Rat default_eps();  // 2^-40

  private:
    Rat uniform128();
    const Rat& threshold(std::size_t n);  // S_n, cached

    FamilySpec spec_;
    Rat eps_;
    std::mt19937_64 rng_;
    std::vector<Rat> thresholds_;
};

/// sup over an E-rational grid of |empirical CDF - f|. The grid is built
/// from cylinder endpoints with bounded digits (so f is exact on it) and
/// has at least n_grid points when the digit caps allow.
Rat empirical_cdf_distance(const FamilySpec& fam, long n_samples, long n_grid,
                           std::uint64_t seed);

/// Rigorous enclosure of the Lebesgue integral of f over [0, 1].
struct IntegralEnclosure {
    Rat lower;
    Rat upper;
    int rank_used = 0;
    Digit breadth_used = 0;
    std::optional<RationalInterval> upper_estimate;

    Rat width() const { return upper - lower; }
    RationalInterval interval() const { return {lower, upper}; }
};

/// Refines (0, 1] into cylinders: children c = 0..breadth of every cylinder
/// are expanded down to max_rank; each leaf contributes length * [min, max]
/// of f (attained at its endpoints), and each unexpanded remainder region
/// (digits > breadth) is bounded through the shift identity by
/// sup_{i >= breadth} r_i. Both sums are exact rationals.
IntegralEnclosure integral_enclosure(const FamilySpec& fam, int max_rank, Digit breadth);

/// The closed-form upper estimate (1 - sum u_n/(2+n))^-1 sum r_n/(2+n),
/// enclosed by truncating both series with certified tail bounds.
struct IntegralEstimate {
    bool applicable = false;  // false when the denominator cannot be certified positive
    RationalInterval bound;
    long long terms_used = 0;
};
IntegralEstimate integral_upper_estimate(const FamilySpec& fam, long long n_terms);

/// Cross-validates the integral enclosure against the CDF identity
/// int_0^1 f = 1 - E[xi] using a seeded Monte Carlo mean.
struct MeanIdentityResult {
    bool pass = false;
    Rat one_minus_mean;
    Rat enclosure_mid;
    Rat abs_diff;
    Rat tolerance;  // 3 * (enclosure width + 1/floor(sqrt(n)))
};
MeanIdentityResult mean_identity_check(const FamilySpec& fam, long n_samples, std::uint64_t seed,
                                       int rank = 12, Digit breadth = 24);

/// mu_f(cylinder)/|cylinder| along the truncations of d, m = 1..max_rank.
/// Reporting only: no singularity verdict is implied.
std::vector<Rat> derivative_ratio_diagnostic(const FamilySpec& fam, const DigitStream& d,
                                             int max_rank);

}  // namespace engelfn
