#include <benchmark/benchmark.h>

#include <random>

#include "simlda/coherence.hpp"
#include "simlda/eval.hpp"
#include "simlda/gibbs.hpp"
#include "simlda/io.hpp"
#include "simlda/simgen.hpp"
#include "simlda/vb.hpp"

using namespace simlda;

namespace {

const Preset& preset_for(std::int64_t which) {
  static const Preset smaller = smaller_preset();
  static const Preset larger = larger_preset();
  return which == 0 ? smaller : larger;
}

GeneratedCorpus corpus_for(std::int64_t which) {
  GeneratorConfig c = preset_for(which).generator;
  c.seed = 1;
  return generate_corpus(c);
}

Matrix random_topics(std::size_t K, std::size_t V, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> u(0.01, 1.0);
  Matrix m(K, V);
  for (double& x : m.data()) x = u(gen);
  normalize_rows(m);
  return m;
}

}  // namespace

static void BM_GenerateCorpus(benchmark::State& state) {
  GeneratorConfig c = preset_for(state.range(0)).generator;
  for (auto _ : state) {
    c.seed++;
    benchmark::DoNotOptimize(generate_corpus(c));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(c.M * c.N));
}
BENCHMARK(BM_GenerateCorpus)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_GibbsSweep(benchmark::State& state) {
  const GeneratedCorpus g = corpus_for(state.range(0));
  GibbsConfig c;
  c.K = g.truth.K;
  c.hyper = preset_for(state.range(0)).hyper;
  GibbsSampler sampler(g.corpus, c);
  for (auto _ : state) sampler.sweep();
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.corpus.total_tokens()));
}
BENCHMARK(BM_GibbsSweep)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_VbEpoch(benchmark::State& state) {
  const GeneratedCorpus g = corpus_for(state.range(0));
  VbConfig c;
  c.K = g.truth.K;
  c.hyper = preset_for(state.range(0)).hyper;
  VbInference vb(g.corpus, c);
  for (auto _ : state) benchmark::DoNotOptimize(vb.epoch());
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.corpus.total_tokens()));
}
BENCHMARK(BM_VbEpoch)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

static void BM_AlignTopics(benchmark::State& state) {
  const auto K = static_cast<std::size_t>(state.range(0));
  const auto V = static_cast<std::size_t>(state.range(1));
  const Matrix truth = random_topics(K, V, 1);
  const Matrix fit = random_topics(K, V, 2);
  for (auto _ : state) benchmark::DoNotOptimize(align_topics(truth, fit));
}
BENCHMARK(BM_AlignTopics)->Args({7, 100})->Args({10, 500});

static void BM_CoherenceScore(benchmark::State& state) {
  const GeneratedCorpus g = corpus_for(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(cv_score(g.truth.phi, g.corpus, CoherenceConfig{}));
}
BENCHMARK(BM_CoherenceScore)->Arg(0)->Arg(1)->Unit(benchmark::kMicrosecond);

static void BM_GzipDocuments(benchmark::State& state) {
  const std::string text = documents_text(corpus_for(1).corpus.docs);
  for (auto _ : state) benchmark::DoNotOptimize(gzip_compress(text));
  state.SetBytesProcessed(state.iterations() * static_cast<std::int64_t>(text.size()));
}
BENCHMARK(BM_GzipDocuments)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
