#include "check.hpp"

#include "engelfn/engel.hpp"
#include "engelfn/func.hpp"
#include "engelfn/measure.hpp"

#include <map>
#include <random>
#include <sstream>

namespace engelfn::cli {

namespace {

std::vector<Digit> random_digits(std::mt19937_64& rng, int max_len, Digit max_digit) {
    std::uniform_int_distribution<int> len(0, max_len);
    std::uniform_int_distribution<Digit> digit(0, max_digit);
    std::vector<Digit> out(static_cast<std::size_t>(len(rng)));
    for (auto& d : out) d = digit(rng);
    return out;
}

struct Battery {
    const FamilySpec& fam;
    bool full;
    std::vector<SuiteResult> results;

    void run(const std::string& name, bool applicable, auto&& body) {
        if (!applicable) return;
        SuiteResult r{name, true, ""};
        try {
            std::string detail = body(r.pass);
            r.detail = detail;
        } catch (const std::exception& e) {
            r.pass = false;
            r.detail = e.what();
        }
        results.push_back(std::move(r));
    }
};

}  // namespace

std::vector<SuiteResult> run_checks(const FamilySpec& fam, bool full) {
    Battery b{fam, full, {}};
    const int n_small = full ? 400 : 120;
    const Digit max_digit = std::min<Digit>(8, fam.max_exact_index() - 2);

    b.run("family_conditions", true, [&](bool& pass) {
        auto rep = fam.validate(full ? 128 : 48);
        pass = rep.ok;
        std::ostringstream os;
        os << "depth " << rep.checked_depth;
        for (const auto& i : rep.issues) os << "; " << i.condition << "@" << i.index;
        return os.str();
    });

    b.run("engel_roundtrip", true, [&](bool& pass) {
        std::mt19937_64 rng(1001);
        int exact = 0, bracketed = 0;
        for (int it = 0; it < n_small; ++it) {
            std::uniform_int_distribution<long> den(2, 100000);
            const long q = den(rng);
            std::uniform_int_distribution<long> num(1, q);
            const Rat x = make_rat(Int(num(rng)), Int(q));
            auto d = digits_of(x, 64);
            auto v = value_of(d);
            if (d.has_period()) {
                pass = pass && std::get<Rat>(v) == x;
                ++exact;
            } else {
                pass = pass && std::get<RationalInterval>(v).contains(x);
                ++bracketed;
            }
        }
        return std::to_string(exact) + " exact, " + std::to_string(bracketed) + " bracketed";
    });

    b.run("cylinder_partition", true, [&](bool& pass) {
        std::mt19937_64 rng(1002);
        for (int it = 0; it < n_small / 4; ++it) {
            Cylinder c(random_digits(rng, 5, 6));
            Rat covered(0);
            for (Digit d = 0; d <= 10; ++d) covered += c.child(d).length();
            pass = pass && covered + (c.child(10).a() - c.a()) == c.length();
            pass = pass && c.child(3).b() == c.child(2).a();
            for (Digit i = 0; i <= 6; ++i) {
                const Rat pr = prepend_length_ratio(c, i);
                pass = pass && (i == 0 ? pr == Rat(1, 2) : pr < make_rat(1, int_of(2 + i)));
            }
        }
        return std::string();
    });

    b.run("functional_equation", true, [&](bool& pass) {
        std::mt19937_64 rng(1003);
        std::uniform_int_distribution<Digit> idist(0, std::min<Digit>(12, max_digit + 4));
        for (int it = 0; it < n_small; ++it) {
            auto d = DigitStream::e_rational(random_digits(rng, 6, max_digit));
            auto v = functional_eq_check(fam, d, idist(rng));
            pass = pass && v.holds && v.exact;
        }
        return std::string();
    });

    b.run("change_formula", true, [&](bool& pass) {
        std::mt19937_64 rng(1004);
        for (int it = 0; it < n_small; ++it) {
            auto base = random_digits(rng, 6, max_digit);
            if (base.empty()) base.push_back(0);
            Cylinder c(base);
            pass = pass && cylinder_change(fam, c) ==
                               eval_at_e_rational(fam, c.supremum_point()) -
                                   eval_at_e_rational(fam, c.infimum_point());
        }
        return std::string();
    });

    b.run("range_bracket", true, [&](bool& pass) {
        std::mt19937_64 rng(1005);
        for (int it = 0; it < n_small; ++it) {
            auto d = DigitStream::e_rational(random_digits(rng, 6, max_digit));
            const Rat v = eval_at_e_rational(fam, d);
            pass = pass && v > 0 && v <= 1 && range_bracket_contains(fam, d.digit(0), v);
        }
        return std::string();
    });

    b.run("enclosure", true, [&](bool& pass) {
        std::mt19937_64 rng(1006);
        const Rat eps(1, 1000000);
        for (int it = 0; it < n_small / 2; ++it) {
            auto d = DigitStream::e_rational(random_digits(rng, 5, max_digit));
            auto iv = eval_enclosure(fam, d, eps);
            pass = pass && iv.contains(eval_at_e_rational(fam, d)) && iv.width() <= eps;
        }
        return std::string();
    });

    b.run("value_range", true, [&](bool& pass) {
        std::mt19937_64 rng(1007);
        for (int it = 0; it < n_small / 2; ++it) {
            auto base = random_digits(rng, 5, max_digit);
            if (base.empty()) base.push_back(1);
            auto r = cylinder_value_range(fam, Cylinder(base));
            pass = pass && r.min <= r.max;
            pass = pass && r.argmin.value == eval_at_e_rational(fam, r.argmin.point);
            pass = pass && r.argmax.value == eval_at_e_rational(fam, r.argmax.point);
        }
        return std::string();
    });

    b.run("strict_monotone", fam.all_nonnegative() && !fam.has_zero_term(), [&](bool& pass) {
        std::mt19937_64 rng(1008);
        std::map<Rat, Rat> graph;
        for (int it = 0; it < n_small; ++it) {
            auto d = DigitStream::e_rational(random_digits(rng, 6, max_digit));
            graph.emplace(value_of_e_rational(d), eval_at_e_rational(fam, d));
        }
        Rat prev(-1);
        for (const auto& [x, y] : graph) {
            pass = pass && y > prev;
            prev = y;
        }
        return "over " + std::to_string(graph.size()) + " sorted points";
    });

    b.run("nondecreasing", fam.all_nonnegative() && fam.has_zero_term(), [&](bool& pass) {
        std::mt19937_64 rng(1009);
        std::map<Rat, Rat> graph;
        for (int it = 0; it < n_small; ++it) {
            auto d = DigitStream::e_rational(random_digits(rng, 6, max_digit));
            graph.emplace(value_of_e_rational(d), eval_at_e_rational(fam, d));
        }
        Rat prev(-1);
        for (const auto& [x, y] : graph) {
            pass = pass && y >= prev;
            prev = y;
        }
        return std::string();
    });

    b.run("nowhere_monotone_witnesses", fam.has_negative_term() && !fam.has_zero_term(),
          [&](bool& pass) {
              const int max_rank = full ? 6 : 3;
              const Digit cap = full ? 6 : 4;
              long count = 0;
              std::vector<Digit> base;
              auto sweep = [&](auto&& self, int depth) -> void {
                  if (!pass) return;
                  auto w = monotonicity_witness(fam, Cylinder(base), cap);
                  pass = pass && w.has_value();
                  ++count;
                  if (depth == max_rank) return;
                  for (Digit c = 0; c <= cap; ++c) {
                      base.push_back(c);
                      self(self, depth + 1);
                      base.pop_back();
                  }
              };
              sweep(sweep, 0);
              return "all " + std::to_string(count) + " cylinders up to rank " +
                     std::to_string(max_rank) + " carry a sign flip";
          });

    b.run("extrema_neighborhood", fam.has_negative_term(), [&](bool& pass) {
        auto pts = enumerate_extrema(fam, 2, 4);
        pass = pass && !pts.empty();
        for (const auto& p : pts) {
            pass = pass && p.value == eval_at_e_rational(fam, p.point);
            std::vector<Digit> base = p.point.prefix();
            const Digit i = base.back();
            base.pop_back();
            Cylinder below(base);
            auto with_i = cylinder_value_range(fam, below.child(i));
            auto with_im1 = cylinder_value_range(fam, below.child(i - 1));
            if (p.role == ProbeRole::maximum)
                pass = pass && p.value == with_i.max && p.value == with_im1.max;
            else
                pass = pass && p.value == with_i.min && p.value == with_im1.min;
        }
        return std::to_string(pts.size()) + " extrema verified";
    });

    b.run("no_extrema", !fam.has_negative_term(), [&](bool& pass) {
        pass = enumerate_extrema(fam, 3, 6).empty();
        return std::string();
    });

    b.run("constancy", fam.has_zero_term(), [&](bool& pass) {
        std::mt19937_64 rng(1010);
        Digit zero_digit = 0;
        while (fam.u(zero_digit) != 0) ++zero_digit;
        for (int it = 0; it < n_small / 2; ++it) {
            auto base = random_digits(rng, 4, max_digit);
            base.push_back(zero_digit);
            auto r = cylinder_value_range(fam, Cylinder(base));
            pass = pass && r.constant && r.min == r.max;
        }
        return std::string();
    });

    const bool heavy_terms = fam.max_exact_index() < 64;  // doubly-exponential family
    const int int_rank = full ? (heavy_terms ? 8 : 12) : 5;
    const Digit int_breadth = full ? (heavy_terms ? 10 : 24) : 8;
    b.run("integral_enclosure", true, [&](bool& pass) {
        auto enc = integral_enclosure(fam, int_rank, int_breadth);
        pass = pass && enc.lower <= enc.upper && enc.lower >= 0 && enc.upper <= 1;
        auto coarse = integral_enclosure(fam, int_rank - 1, int_breadth);
        pass = pass && coarse.lower <= enc.lower && enc.upper <= coarse.upper;
        auto bound = integral_upper_estimate(fam, std::min<long long>(40, fam.max_exact_index()));
        if (bound.applicable) pass = pass && enc.upper <= bound.bound.hi;
        std::ostringstream os;
        os << "I in [" << decimal_str(enc.lower, 6) << ", " << decimal_str(enc.upper, 6) << "]";
        if (bound.applicable) os << ", estimate <= " << decimal_str(bound.bound.hi, 6);
        return os.str();
    });

    b.run("cdf_sampling", fam.all_nonnegative(), [&](bool& pass) {
        const long n = full ? 10000 : 2000;
        const Rat ks = empirical_cdf_distance(fam, n, 200, 90210);
        pass = pass && ks < (full ? Rat(1, 50) : Rat(1, 25));
        return "KS distance " + decimal_str(ks, 4) + " at n = " + std::to_string(n);
    });

    b.run("mean_identity", fam.all_nonnegative() && full, [&](bool& pass) {
        auto res = mean_identity_check(fam, 20000, 1314, int_rank, int_breadth);
        pass = pass && res.pass;
        return "|1 - mean - mid| = " + decimal_str(res.abs_diff, 4) +
               " <= " + decimal_str(res.tolerance, 4);
    });

    return b.results;
}

}  // namespace engelfn::cli
