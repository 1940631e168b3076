#include <cmath>
#include <numeric>

#include "doctest.h"
#include "oracles.hpp"
#include "simlda/errors.hpp"
#include "simlda/eval.hpp"
#include "simlda/simgen.hpp"
#include "simlda/vb.hpp"
#include "support.hpp"

using namespace simlda;

namespace {

VbConfig quick_config(std::size_t K, std::uint64_t seed, std::size_t epochs = 20) {
  VbConfig c;
  c.K = K;
  c.seed = seed;
  c.epochs = epochs;
  c.elbo_rel_tol = 0.0;
  return c;
}

std::vector<std::vector<unsigned>> as_plain(const Corpus& c) {
  std::vector<std::vector<unsigned>> out;
  for (const auto& d : c.docs) out.emplace_back(d.begin(), d.end());
  return out;
}

}  // namespace

TEST_SUITE("vb") {
  TEST_CASE("responsibilities are stable for extreme log weights") {
    const std::vector<double> w{-1000.0, -1001.0, -2000.0};
    const auto r = log_space_responsibilities(w);
    CHECK(std::abs(std::accumulate(r.begin(), r.end(), 0.0) - 1.0) < 1e-12);
    CHECK(r[0] == doctest::Approx(1.0 / (1.0 + std::exp(-1.0))));
    CHECK(r[2] >= 0.0);
  }

  TEST_CASE("one topic: closed form after one epoch") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
      const GeneratedCorpus g = generate_corpus(testing_support::tiny_config(seed));
      VbConfig c = quick_config(1, seed, 1);
      c.hyper = {0.4, 0.2};
      VbInference vb(g.corpus, c);
      vb.epoch();
      const auto counts = g.corpus.word_counts();
      for (std::size_t v = 0; v < counts.size(); ++v) {
        CHECK(vb.state().lambda(0, v) == 0.2 + static_cast<double>(counts[v]));
      }
      for (std::size_t m = 0; m < g.corpus.docs.size(); ++m) {
        CHECK(vb.state().gamma(m, 0) == 0.4 + static_cast<double>(g.corpus.docs[m].size()));
      }
    }
  }

  TEST_CASE("ELBO of the one-topic state matches the scalar oracle") {
    const GeneratedCorpus g = generate_corpus(testing_support::tiny_config(3));
    VbConfig c = quick_config(1, 3, 1);
    VbInference vb(g.corpus, c);
    const double elbo = vb.epoch();
    const auto row = vb.state().lambda.row(0);
    const double expected =
        oracle::elbo_one_topic(as_plain(g.corpus), {row.begin(), row.end()}, c.hyper.beta);
    CHECK(elbo == doctest::Approx(expected).epsilon(1e-10));
  }

  TEST_CASE("ELBO of an empty corpus is the sum of topic prior terms") {
    std::mt19937_64 gen(2);
    const std::size_t K = 3, V = 8;
    VariationalState s;
    s.lambda = Matrix(K, V);
    std::uniform_real_distribution<double> u(0.1, 5.0);
    for (double& x : s.lambda.data()) x = u(gen);
    s.gamma = Matrix(0, K);
    const Corpus empty = testing_support::make_corpus({}, V);
    double expected = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      const auto row = s.lambda.row(k);
      expected += oracle::dirichlet_kl_term({row.begin(), row.end()}, 0.3);
    }
    CHECK(compute_elbo(empty, s, {0.5, 0.3}) == doctest::Approx(expected).epsilon(1e-10));
    // The bound is zero when the posterior equals the prior.
    for (double& x : s.lambda.data()) x = 0.3;
    CHECK(std::abs(compute_elbo(empty, s, {0.5, 0.3})) < 1e-9);
  }

  TEST_CASE("ELBO rejects mismatched state") {
    const Corpus c = testing_support::make_corpus({{0, 1}}, 3);
    VariationalState s;
    s.lambda = Matrix(2, 4, 1.0);
    s.gamma = Matrix(1, 2, 1.0);
    CHECK_THROWS_AS(compute_elbo(c, s, {0.1, 0.1}), InputError);
  }

  TEST_CASE("ELBO never decreases across epochs") {
    for (const Preset& p : {smaller_preset(), larger_preset()}) {
      GeneratorConfig gc = p.generator;
      gc.M = 15;
      gc.seed = 40;
      const GeneratedCorpus g = generate_corpus(gc);
      VbConfig c = quick_config(gc.K, 6, 25);
      c.hyper = p.hyper;
      VbInference vb(g.corpus, c);
      double previous = vb.epoch();
      for (int t = 1; t < 25; ++t) {
        const double elbo = vb.epoch();
        CHECK(elbo >= previous - 1e-8 * std::abs(previous));
        previous = elbo;
      }
    }
  }

  TEST_CASE("state stays above the priors and fits are stochastic") {
    const GeneratedCorpus g = generate_corpus(testing_support::tiny_config(12));
    VbConfig c = quick_config(7, 2);
    const VbOutcome out = vb_run(g.corpus, c);
    for (double x : out.state.lambda.data()) CHECK(x >= c.hyper.beta);
    for (double x : out.state.gamma.data()) CHECK(x >= c.hyper.alpha);
    CHECK(max_row_sum_error(out.fit.phi_hat) < 1e-10);
    CHECK(max_row_sum_error(out.fit.theta_hat) < 1e-10);
    for (double x : out.fit.phi_hat.data()) CHECK(x > 0.0);
    CHECK(out.fit.iterations == out.state.elbo_trace.size());
    CHECK(out.fit.algorithm == Algorithm::Vb);
  }

  TEST_CASE("fits are deterministic") {
    const GeneratedCorpus g = generate_corpus(testing_support::tiny_config(13));
    const FitResult a = vb_fit(g.corpus, quick_config(7, 9));
    const FitResult b = vb_fit(g.corpus, quick_config(7, 9));
    CHECK(a.phi_hat == b.phi_hat);
    CHECK(a.theta_hat == b.theta_hat);
    CHECK(a.phi_hat != vb_fit(g.corpus, quick_config(7, 10)).phi_hat);
  }

  TEST_CASE("relative tolerance stops early") {
    const GeneratedCorpus g = generate_corpus(testing_support::tiny_config(14));
    VbConfig c = quick_config(7, 1, 500);
    c.elbo_rel_tol = 1e-4;
    const VbOutcome out = vb_run(g.corpus, c);
    CHECK(out.fit.iterations < 500);
  }

  TEST_CASE("config validation and empty corpus") {
    VbConfig c;
    CHECK_NOTHROW(c.validate());
    c.epochs = 0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    const Corpus empty = testing_support::make_corpus({}, 5);
    CHECK_THROWS_AS(vb_fit(empty, quick_config(2, 0)), InputError);
  }
}
