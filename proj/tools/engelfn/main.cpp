#include <CLI11.hpp>
#include <json.hpp>

#include "engelfn/engel.hpp"
#include "engelfn/family.hpp"
#include "engelfn/func.hpp"
#include "engelfn/measure.hpp"

#include "check.hpp"
#include "plot.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

using namespace engelfn;
using nlohmann::json;

constexpr int kUsageError = 2;
constexpr int kCheckFailure = 1;

struct FamilyOptions {
    std::string name;
    std::string config_path;
    std::string a = "3/2";
};

void add_family_options(CLI::App* cmd, FamilyOptions& opts) {
    cmd->add_option("--family", opts.name, "builtin family name")
        ->check(CLI::IsMember(FamilySpec::builtin_names()));
    cmd->add_option("--config", opts.config_path, "JSON family config file");
    cmd->add_option("--a", opts.a, "two_scale parameter a in (1,2), e.g. 3/2");
}

FamilySpec resolve_family(const FamilyOptions& opts) {
    if (!opts.config_path.empty()) {
        std::ifstream in(opts.config_path);
        if (!in) throw std::invalid_argument("cannot open config file '" + opts.config_path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return FamilySpec::from_json_text(buf.str());
    }
    if (opts.name.empty())
        throw std::invalid_argument("no family given: pass --family <name> or --config <file>");
    if (opts.name == "two_scale") return FamilySpec::two_scale(parse_rational(opts.a));
    return FamilySpec::from_name(opts.name);
}

FamilySpec resolve_validated_family(const FamilyOptions& opts) {
    FamilySpec fam = resolve_family(opts);
    auto rep = fam.validate(32);
    if (!rep.ok) {
        std::ostringstream os;
        os << "family '" << fam.name() << "' fails its initial conditions:\n" << rep.str();
        throw std::invalid_argument(os.str());
    }
    return fam;
}

std::string show(const Rat& v, bool exact, int digits = 12) {
    return exact ? rat_str(v) : decimal_str(v, digits);
}

void write_output(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::invalid_argument("cannot open output file '" + path + "'");
    out << content;
}

Rat parse_level(const FamilySpec& fam, const std::string& text) {
    // plain rational, or "from:periodic:<digits>" for f at a periodic point
    const std::string tag = "from:periodic:";
    if (text.rfind(tag, 0) != 0) return parse_rational(text);
    std::string digits_text = text.substr(tag.size());
    std::vector<Digit> period;
    if (digits_text.find_first_of(", ") == std::string::npos) {
        for (char c : digits_text) {
            if (c < '0' || c > '9')
                throw std::invalid_argument("bad digit in level spec '" + text + "'");
            period.push_back(c - '0');
        }
    } else {
        std::replace(digits_text.begin(), digits_text.end(), ',', ' ');
        std::istringstream is(digits_text);
        Digit d;
        while (is >> d) period.push_back(d);
    }
    if (period.empty()) throw std::invalid_argument("empty period in level spec '" + text + "'");
    return eval_periodic(fam, DigitStream::periodic({}, period));
}

// ---------------------------------------------------------------------------

int cmd_digits(const std::string& x_text, std::size_t max_digits) {
    std::cout << digits_of(parse_rational(x_text), max_digits).str() << "\n";
    return 0;
}

int cmd_value(const std::string& digits_text, bool exact) {
    auto d = DigitStream::parse(digits_text);
    auto v = value_of(d);
    if (std::holds_alternative<Rat>(v)) {
        std::cout << rat_str(std::get<Rat>(v)) << " (exact)\n";
    } else {
        const auto& iv = std::get<RationalInterval>(v);
        std::cout << "[" << show(iv.lo, exact) << ", " << show(iv.hi, exact) << "] (width "
                  << decimal_str(iv.width(), 3) << ")\n";
    }
    return 0;
}

int cmd_eval(const FamilySpec& fam, const std::string& x_text, const std::string& digits_text,
             const std::string& eps_text, bool exact, bool as_json) {
    if (x_text.empty() == digits_text.empty())
        throw std::invalid_argument("eval: give exactly one of <x> or --digits");
    DigitStream d =
        digits_text.empty() ? digits_of(parse_rational(x_text), 64) : DigitStream::parse(digits_text);

    if (d.has_period()) {
        const Rat v = eval_periodic(fam, d);
        if (as_json) {
            json j{{"exact", true}, {"value", rat_str(v)}, {"decimal", decimal_str(v, 12)}};
            std::cout << j.dump() << "\n";
        } else {
            std::cout << rat_str(v) << " (exact)\n";
        }
        return 0;
    }
    const Rat eps = parse_rational(eps_text);
    auto iv = eval_enclosure(fam, d, eps);
    if (as_json) {
        json j{{"exact", false},
               {"lo", exact ? rat_str(iv.lo) : decimal_str(iv.lo, 12)},
               {"hi", exact ? rat_str(iv.hi) : decimal_str(iv.hi, 12)},
               {"width", decimal_str(iv.width(), 3)}};
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "[" << show(iv.lo, exact) << ", " << show(iv.hi, exact) << "] (width "
                  << decimal_str(iv.width(), 3) << ")\n";
    }
    return 0;
}

int cmd_plot(const FamilySpec& fam, int points, const std::string& out_path,
             const std::string& svg_path) {
    auto boxes = cli::plot_boxes(fam, points);
    write_output(out_path, cli::boxes_to_csv(boxes, 12));
    if (!svg_path.empty()) write_output(svg_path, cli::boxes_to_svg(boxes, 800, 600));
    return 0;
}

int cmd_extrema(const FamilySpec& fam, int rank, Digit digit_cap, bool exact, bool as_json) {
    auto pts = enumerate_extrema(fam, rank, digit_cap);
    if (as_json) {
        json arr = json::array();
        for (const auto& p : pts) {
            std::vector<Digit> base = p.point.prefix();
            const Digit i = base.back();
            base.pop_back();
            arr.push_back(json{{"base", base},
                               {"i", i},
                               {"type", p.role == ProbeRole::maximum ? "max" : "min"},
                               {"point", p.point.str()},
                               {"value", exact ? rat_str(p.value) : decimal_str(p.value, 12)}});
        }
        std::cout << json{{"family", fam.name()}, {"extrema", arr}}.dump() << "\n";
        return 0;
    }
    for (const auto& p : pts) {
        std::vector<Digit> base = p.point.prefix();
        const Digit i = base.back();
        base.pop_back();
        std::string base_text;
        for (std::size_t k = 0; k < base.size(); ++k)
            base_text += (k ? " " : "") + std::to_string(base[k]);
        std::cout << base_text << ";" << i << ";"
                  << (p.role == ProbeRole::maximum ? "max" : "min") << ";"
                  << show(p.value, exact) << "\n";
    }
    return 0;
}

int cmd_levelset(const FamilySpec& fam, const std::string& y_text, int rank, Digit digit_cap,
                 bool as_json) {
    const Rat y0 = parse_level(fam, y_text);
    auto cyls = level_set_probe(fam, y0, rank, digit_cap);
    if (as_json) {
        json arr = json::array();
        for (const auto& c : cyls) arr.push_back(c.base());
        std::cout << json{{"family", fam.name()},
                          {"y0", rat_str(y0)},
                          {"count", cyls.size()},
                          {"cylinders", arr}}
                         .dump()
                  << "\n";
        return 0;
    }
    std::cout << "y0 = " << rat_str(y0) << ": " << cyls.size() << " certified cylinders\n";
    for (const auto& c : cyls) std::cout << c.str() << "\n";
    return 0;
}

int cmd_integral(const FamilySpec& fam, int rank, Digit breadth, long long terms, bool exact,
                 bool as_json) {
    IntegralEnclosure enc = integral_enclosure(fam, rank, breadth);
    auto bound = integral_upper_estimate(fam, terms);
    if (bound.applicable) enc.upper_estimate = bound.bound;

    auto field = [&](const Rat& v) { return exact ? rat_str(v) : decimal_str(v, 12); };
    if (as_json) {
        json j{{"family", fam.name()}, {"lower", field(enc.lower)}, {"upper", field(enc.upper)},
               {"width", decimal_str(enc.width(), 3)}, {"rank", enc.rank_used},
               {"breadth", enc.breadth_used}};
        if (enc.upper_estimate) {
            j["paper_bound_lo"] = field(enc.upper_estimate->lo);
            j["paper_bound_hi"] = field(enc.upper_estimate->hi);
        }
        std::cout << j.dump() << "\n";
        return 0;
    }
    std::cout << "integral of f in [" << field(enc.lower) << ", " << field(enc.upper)
              << "] (width " << decimal_str(enc.width(), 3) << ", rank " << enc.rank_used
              << ", breadth " << enc.breadth_used << ")\n";
    if (enc.upper_estimate)
        std::cout << "closed-form estimate in [" << field(enc.upper_estimate->lo) << ", "
                  << field(enc.upper_estimate->hi) << "]\n";
    else
        std::cout << "closed-form estimate not certifiable for this family\n";
    return 0;
}

int cmd_sample(const FamilySpec& fam, long count, std::uint64_t seed, const std::string& eps_text,
               bool exact, bool as_json, bool ks_report, long grid) {
    if (ks_report) {
        const Rat ks = empirical_cdf_distance(fam, count, grid, seed);
        json j{{"family", fam.name()}, {"n_samples", count},   {"n_grid", grid},
               {"seed", seed},         {"ks", rat_str(ks)},    {"ks_decimal", decimal_str(ks, 6)}};
        std::cout << j.dump() << "\n";
        return 0;
    }
    Rat eps = eps_text.empty() ? XiSampler::default_eps() : parse_rational(eps_text);
    XiSampler sampler(fam, seed, eps);
    if (as_json) {
        json arr = json::array();
        for (long i = 0; i < count; ++i) arr.push_back(show(sampler.next().x, exact));
        std::cout << json{{"family", fam.name()}, {"seed", seed}, {"samples", arr}}.dump() << "\n";
        return 0;
    }
    for (long i = 0; i < count; ++i) std::cout << show(sampler.next().x, exact) << "\n";
    return 0;
}

int cmd_check(const FamilySpec& fam, bool full) {
    auto results = cli::run_checks(fam, full);
    bool all = true;
    for (const auto& r : results) {
        all = all && r.pass;
        std::cout << (r.pass ? "ok   " : "FAIL ") << r.name;
        if (!r.detail.empty()) std::cout << " - " << r.detail;
        std::cout << "\n";
    }
    std::cout << (all ? "check passed" : "check FAILED") << " (" << results.size()
              << " suites, family " << fam.name() << ")\n";
    return all ? 0 : kCheckFailure;
}

int cmd_family_validate(const FamilySpec& fam, long long depth) {
    auto rep = fam.validate(depth);
    std::cout << "family " << fam.name() << ": " << rep.str();
    return rep.ok ? 0 : kUsageError;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact Engel-series function laboratory"};
    app.require_subcommand(1);

    // digits
    auto* digits_cmd = app.add_subcommand("digits", "E-representation of a rational in (0,1]");
    std::string digits_x;
    std::size_t max_digits = 64;
    digits_cmd->add_option("x", digits_x, "rational p/q")->required();
    digits_cmd->add_option("--max-digits", max_digits, "truncation cap (default 64)");

    // value
    auto* value_cmd = app.add_subcommand("value", "value of a digit stream");
    std::string value_digits;
    bool value_exact = false;
    value_cmd->add_option("--digits", value_digits, "stream, e.g. \"1 (0)\"")->required();
    value_cmd->add_flag("--exact", value_exact, "print rationals instead of decimals");

    // eval
    auto* eval_cmd = app.add_subcommand("eval", "evaluate f at a point");
    FamilyOptions eval_fam;
    add_family_options(eval_cmd, eval_fam);
    std::string eval_x, eval_digits, eval_eps = "1/1000000000";
    bool eval_exact = false, eval_json = false;
    eval_cmd->add_option("x", eval_x, "rational argument");
    eval_cmd->add_option("--digits", eval_digits, "digit stream argument");
    eval_cmd->add_option("--eps", eval_eps, "enclosure width target (rational)");
    eval_cmd->add_flag("--exact", eval_exact, "print rationals");
    eval_cmd->add_flag("--json", eval_json, "machine-readable output");

    // plot
    auto* plot_cmd = app.add_subcommand("plot", "CSV/SVG enclosure boxes of the graph");
    FamilyOptions plot_fam;
    add_family_options(plot_cmd, plot_fam);
    int plot_points = 256;
    std::string plot_out, plot_svg;
    plot_cmd->add_option("--points", plot_points, "number of boxes (default 256)");
    plot_cmd->add_option("--out", plot_out, "CSV path (default stdout)");
    plot_cmd->add_option("--svg", plot_svg, "also write an SVG rendering");

    // extrema
    auto* ext_cmd = app.add_subcommand("extrema", "classified extrema at E-rational points");
    FamilyOptions ext_fam;
    add_family_options(ext_cmd, ext_fam);
    int ext_rank = 3;
    Digit ext_cap = 6;
    bool ext_exact = false, ext_json = false;
    ext_cmd->add_option("--rank", ext_rank, "max base rank (default 3)");
    ext_cmd->add_option("--digit-cap", ext_cap, "digit cap (default 6)");
    ext_cmd->add_flag("--exact", ext_exact, "print rationals");
    ext_cmd->add_flag("--json", ext_json, "machine-readable output");

    // levelset
    auto* lvl_cmd = app.add_subcommand("levelset", "certified cylinders meeting a level");
    FamilyOptions lvl_fam;
    add_family_options(lvl_cmd, lvl_fam);
    std::string lvl_y;
    int lvl_rank = 8;
    Digit lvl_cap = 8;
    bool lvl_json = false;
    lvl_cmd->add_option("--y", lvl_y, "level: rational or from:periodic:<digits>")->required();
    lvl_cmd->add_option("--rank", lvl_rank, "probe rank (default 8)");
    lvl_cmd->add_option("--digit-cap", lvl_cap, "digit cap (default 8)");
    lvl_cmd->add_flag("--json", lvl_json, "machine-readable output");

    // integral
    auto* int_cmd = app.add_subcommand("integral", "rigorous integral enclosure");
    FamilyOptions int_fam;
    add_family_options(int_cmd, int_fam);
    int int_rank = 12;
    Digit int_breadth = 24;
    long long int_terms = 40;
    bool int_exact = false, int_json = false;
    int_cmd->add_option("--rank", int_rank, "refinement rank (default 12)");
    int_cmd->add_option("--breadth", int_breadth, "children per cylinder (default 24)");
    int_cmd->add_option("--terms", int_terms, "series terms for the closed-form estimate");
    int_cmd->add_flag("--exact", int_exact, "print rationals");
    int_cmd->add_flag("--json", int_json, "machine-readable output");

    // sample
    auto* smp_cmd = app.add_subcommand("sample", "draw xi with i.i.d. E-symbols");
    FamilyOptions smp_fam;
    add_family_options(smp_cmd, smp_fam);
    long smp_n = 10;
    std::uint64_t smp_seed = 0;
    std::string smp_eps;
    bool smp_exact = false, smp_json = false, smp_ks = false;
    long smp_grid = 200;
    smp_cmd->add_option("--n", smp_n, "number of samples (default 10)");
    smp_cmd->add_option("--seed", smp_seed, "RNG seed (default 0)");
    smp_cmd->add_option("--eps", smp_eps, "cylinder resolution (default 2^-40)");
    smp_cmd->add_flag("--exact", smp_exact, "print rationals");
    smp_cmd->add_flag("--json", smp_json, "machine-readable output");
    smp_cmd->add_flag("--ks", smp_ks, "print a JSON distribution-fit report instead of samples");
    smp_cmd->add_option("--grid", smp_grid, "grid size for --ks (default 200)");

    // check
    auto* chk_cmd = app.add_subcommand("check", "run the invariant battery");
    FamilyOptions chk_fam;
    add_family_options(chk_cmd, chk_fam);
    bool chk_full = false;
    chk_cmd->add_flag("--full", chk_full, "heavier sweeps plus sampling/integral cross-checks");

    // family validate
    auto* fam_cmd = app.add_subcommand("family", "family utilities");
    auto* val_cmd = fam_cmd->add_subcommand("validate", "check the initial conditions");
    FamilyOptions val_fam;
    add_family_options(val_cmd, val_fam);
    long long val_depth = 64;
    val_cmd->add_option("--depth", val_depth, "check depth (default 64)");
    fam_cmd->require_subcommand(1);

    try {
        app.parse(argc, argv);

        if (*digits_cmd) return cmd_digits(digits_x, max_digits);
        if (*value_cmd) return cmd_value(value_digits, value_exact);
        if (*eval_cmd)
            return cmd_eval(resolve_validated_family(eval_fam), eval_x, eval_digits, eval_eps,
                            eval_exact, eval_json);
        if (*plot_cmd)
            return cmd_plot(resolve_validated_family(plot_fam), plot_points, plot_out, plot_svg);
        if (*ext_cmd)
            return cmd_extrema(resolve_validated_family(ext_fam), ext_rank, ext_cap, ext_exact,
                               ext_json);
        if (*lvl_cmd)
            return cmd_levelset(resolve_validated_family(lvl_fam), lvl_y, lvl_rank, lvl_cap,
                                lvl_json);
        if (*int_cmd)
            return cmd_integral(resolve_validated_family(int_fam), int_rank, int_breadth,
                                int_terms, int_exact, int_json);
        if (*smp_cmd)
            return cmd_sample(resolve_validated_family(smp_fam), smp_n, smp_seed, smp_eps,
                              smp_exact, smp_json, smp_ks, smp_grid);
        if (*chk_cmd) return cmd_check(resolve_validated_family(chk_fam), chk_full);
        if (*val_cmd) return cmd_family_validate(resolve_family(val_fam), val_depth);
        return kUsageError;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsageError;
    }
}
