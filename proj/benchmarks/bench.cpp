#include <benchmark/benchmark.h>

#include <random>

#include "ssk/staralg.hpp"

using namespace ssk;

namespace {

ColoredWord random_word(const KGraph& g, std::mt19937_64& rng, int len) {
    ColoredWord w;
    for (int i = 0; i < len; ++i) {
        int color = static_cast<int>(rng() % g.rank());
        w.push_back({color, static_cast<int>(rng() % g.sizes()[color])});
    }
    return w;
}

void BM_normalize_word(benchmark::State& state) {
    KGraph g = KGraph::validate(make_theta(ThetaKind::Division, {2, 3, 5}));
    std::mt19937_64 rng(1);
    std::vector<ColoredWord> words;
    for (int i = 0; i < 64; ++i)
        words.push_back(random_word(g, rng, static_cast<int>(state.range(0))));
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(g.normalize_word(words[i++ % words.size()]));
    }
}
BENCHMARK(BM_normalize_word)->Arg(8)->Arg(16)->Arg(32);

void BM_semigroup_multiply(benchmark::State& state) {
    SelfSimilarKGraph bs = make_odometer(2, 3);
    std::mt19937_64 rng(2);
    std::vector<SemigroupElement> els;
    for (int i = 0; i < 64; ++i) {
        Path p = Path::empty(1);
        for (int j = 0; j < 6; ++j)
            p.words[0].push_back(static_cast<int>(rng() % 2));
        els.push_back({p, static_cast<long>(rng() % 21) - 10});
    }
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            multiply(bs, els[i % els.size()], els[(i + 1) % els.size()]));
        ++i;
    }
}
BENCHMARK(BM_semigroup_multiply);

void BM_mono_product(benchmark::State& state) {
    SelfSimilarKGraph p23 = make_product_of_odometers({2, 3});
    auto paths = p23.graph().enumerate_paths(
        Degree({static_cast<int>(state.range(0)), 1}));
    std::vector<Monomial> monos;
    for (size_t i = 0; i < paths.size(); ++i)
        monos.push_back({paths[i], static_cast<long>(i % 5) - 2,
                         paths[(i + 3) % paths.size()]});
    size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mono_product(
            p23, monos[i % monos.size()], monos[(i + 1) % monos.size()]));
        ++i;
    }
}
BENCHMARK(BM_mono_product)->Arg(1)->Arg(2);

}  // namespace

BENCHMARK_MAIN();
