#include <benchmark/benchmark.h>

#include "engelfn/engel.hpp"
#include "engelfn/func.hpp"
#include "engelfn/measure.hpp"

#include <random>

using namespace engelfn;

namespace {

std::vector<Rat> sample_rationals(int n, long max_den) {
    std::mt19937_64 rng(4242);
    std::vector<Rat> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        std::uniform_int_distribution<long> den(2, max_den);
        const long q = den(rng);
        std::uniform_int_distribution<long> num(1, q);
        out.push_back(make_rat(Int(num(rng)), Int(q)));
    }
    return out;
}

std::vector<std::vector<Digit>> sample_prefixes(int n, int len, Digit max_digit) {
    std::mt19937_64 rng(2424);
    std::uniform_int_distribution<Digit> digit(0, max_digit);
    std::vector<std::vector<Digit>> out(static_cast<std::size_t>(n));
    for (auto& p : out) {
        p.resize(static_cast<std::size_t>(len));
        for (auto& d : p) d = digit(rng);
    }
    return out;
}

void BM_DigitsOf(benchmark::State& state) {
    const auto xs = sample_rationals(256, state.range(0));
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(digits_of(xs[i++ & 255], 64));
    }
}
BENCHMARK(BM_DigitsOf)->Arg(1000)->Arg(1000000);

void BM_CylinderEndpoints(benchmark::State& state) {
    const auto ps = sample_prefixes(64, static_cast<int>(state.range(0)), 8);
    std::size_t i = 0;
    for (auto _ : state) {
        Cylinder c(ps[i++ & 63]);
        benchmark::DoNotOptimize(c.a());
        benchmark::DoNotOptimize(c.length());
    }
}
BENCHMARK(BM_CylinderEndpoints)->Arg(4)->Arg(16);

void BM_EvalERational(benchmark::State& state) {
    const auto fam = FamilySpec::two_scale(Rat(3, 2));
    const auto ps = sample_prefixes(64, static_cast<int>(state.range(0)), 8);
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_at_e_rational(fam, DigitStream::e_rational(ps[i++ & 63])));
    }
}
BENCHMARK(BM_EvalERational)->Arg(6)->Arg(12)->Arg(24);

void BM_EvalRawDeepTerm(benchmark::State& state) {
    // one huge family term up front: the raw path keeps this linear
    const auto fam = FamilySpec::sylvester();
    std::vector<Digit> digits{state.range(0), 2, 0, 1, 3, 0, 2, 1};
    for (auto _ : state) {
        benchmark::DoNotOptimize(eval_e_rational_raw(fam, digits));
    }
}
BENCHMARK(BM_EvalRawDeepTerm)->Arg(8)->Arg(14)->Arg(20);

void BM_IntegralEnclosure(benchmark::State& state) {
    const auto fam = FamilySpec::dyadic();
    for (auto _ : state) {
        benchmark::DoNotOptimize(integral_enclosure(fam, static_cast<int>(state.range(0)), 16));
    }
}
BENCHMARK(BM_IntegralEnclosure)->Arg(6)->Arg(10)->Arg(12);

void BM_SamplerDraw(benchmark::State& state) {
    XiSampler sampler(FamilySpec::dyadic(), 99);
    for (auto _ : state) {
        benchmark::DoNotOptimize(sampler.next());
    }
}
BENCHMARK(BM_SamplerDraw);

void BM_LevelSetProbe(benchmark::State& state) {
    const auto fam = FamilySpec::two_scale(Rat(3, 2));
    const Rat y0 = eval_periodic(fam, DigitStream::periodic({}, {0, 1}));
    for (auto _ : state) {
        benchmark::DoNotOptimize(level_set_probe(fam, y0, static_cast<int>(state.range(0)), 8));
    }
}
BENCHMARK(BM_LevelSetProbe)->Arg(4)->Arg(6)->Arg(8);

}  // namespace

BENCHMARK_MAIN();
