#include <cmath>
#include <numeric>
#include <random>

#include "doctest.h"
#include "simlda/errors.hpp"
#include "simlda/random.hpp"
#include "simlda/types.hpp"
#include "support.hpp"

using namespace simlda;

TEST_SUITE("random") {
  TEST_CASE("derive_seed separates streams and is a pure function") {
    CHECK(derive_seed(1, 0) == derive_seed(1, 0));
    CHECK(derive_seed(1, 0) != derive_seed(1, 1));
    CHECK(derive_seed(1, 0) != derive_seed(2, 0));
    CHECK(Rng(5).child(3).seed() == derive_seed(5, 3));
  }

  TEST_CASE("same seed gives the same stream") {
    Rng a(42), b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next_u64() == b.next_u64());
  }

  TEST_CASE("uniform stays in [0,1) and uniform_index in range") {
    Rng rng(1);
    for (int i = 0; i < 10000; ++i) {
      const double u = rng.uniform();
      CHECK(u >= 0.0);
      CHECK(u < 1.0);
      const double o = rng.uniform_open();
      CHECK(o > 0.0);
      CHECK(o < 1.0);
      CHECK(rng.uniform_index(7) < 7);
    }
    CHECK_THROWS_AS(rng.uniform_index(0), ParameterError);
  }

  TEST_CASE("gamma variates have the right mean for shapes above and below one") {
    for (double shape : {0.1, 0.5, 1.0, 3.0, 100.0}) {
      Rng rng(7);
      const int n = 40000;
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        const double g = rng.gamma(shape);
        CHECK(g >= 0.0);
        sum += g;
      }
      // Standard error of the mean is sqrt(shape / n).
      CHECK(std::abs(sum / n - shape) < 5.0 * std::sqrt(shape / n));
    }
  }

  TEST_CASE("log_gamma agrees with log of gamma in distribution") {
    Rng rng(9);
    const int n = 40000;
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += std::exp(rng.log_gamma(0.3));
    CHECK(std::abs(sum / n - 0.3) < 5.0 * std::sqrt(0.3 / n));
  }

  TEST_CASE("normal variates have mean 0 and variance 1") {
    Rng rng(11);
    const int n = 50000;
    double s = 0.0, s2 = 0.0;
    for (int i = 0; i < n; ++i) {
      const double x = rng.normal();
      s += x;
      s2 += x * x;
    }
    CHECK(std::abs(s / n) < 0.03);
    CHECK(std::abs(s2 / n - 1.0) < 0.05);
  }

  TEST_CASE("sample_dirichlet: huge concentration gives its mean") {
    Rng rng(3);
    const std::vector<double> c{1e9, 1e9};
    const auto p = sample_dirichlet(c, rng);
    CHECK(std::abs(p[0] - 0.5) < 1e-3);
    CHECK(std::abs(p[1] - 0.5) < 1e-3);
  }

  TEST_CASE("sample_dirichlet: output is stochastic for any symmetric concentration") {
    Rng rng(4);
    for (double a : {1e-3, 0.01, 0.1, 0.5, 1.0, 10.0, 1e6}) {
      const std::vector<double> c{a, a, a};
      for (int rep = 0; rep < 200; ++rep) {
        const auto p = sample_dirichlet(c, rng);
        const double s = std::accumulate(p.begin(), p.end(), 0.0);
        CHECK(std::abs(s - 1.0) < 1e-12);
        for (double x : p) CHECK(x >= 0.0);
      }
    }
  }

  TEST_CASE("sample_dirichlet: fixed seed reproduces the vector") {
    const std::vector<double> c{1.0, 1.0, 1.0};
    Rng a(77), b(77);
    CHECK(sample_dirichlet(c, a) == sample_dirichlet(c, b));
  }

  TEST_CASE("sample_dirichlet rejects bad concentrations") {
    Rng rng(1);
    CHECK_THROWS_AS(sample_dirichlet(std::vector<double>{}, rng), ParameterError);
    CHECK_THROWS_AS(sample_dirichlet(std::vector<double>{1.0, 0.0}, rng), ParameterError);
    CHECK_THROWS_AS(sample_dirichlet(std::vector<double>{1.0, -1.0}, rng), ParameterError);
  }

  TEST_CASE("sample_categorical: degenerate distribution") {
    Rng rng(2);
    const std::vector<double> p{0.0, 1.0, 0.0};
    for (int i = 0; i < 1000; ++i) CHECK(sample_categorical(p, rng) == 1);
  }

  TEST_CASE("sample_categorical: fair coin frequency inside the 99.9% band") {
    Rng rng(12345);
    const std::vector<double> p{0.5, 0.5};
    int zeros = 0;
    for (int i = 0; i < 10000; ++i) zeros += sample_categorical(p, rng) == 0 ? 1 : 0;
    CHECK(zeros >= 4700);
    CHECK(zeros <= 5300);
  }

  TEST_CASE("sample_categorical: fixed seed reproduces the sequence") {
    const std::vector<double> p{0.2, 0.3, 0.5};
    Rng a(8), b(8);
    for (int i = 0; i < 500; ++i) CHECK(sample_categorical(p, a) == sample_categorical(p, b));
  }

  TEST_CASE("sample_categorical never returns a zero-probability index") {
    Rng rng(6);
    const std::vector<double> p{0.0, 0.5, 0.0, 0.5, 0.0};
    for (int i = 0; i < 5000; ++i) {
      const auto k = sample_categorical(p, rng);
      CHECK((k == 1 || k == 3));
    }
  }

  TEST_CASE("sample_categorical rejects invalid vectors") {
    Rng rng(6);
    CHECK_THROWS_AS(sample_categorical(std::vector<double>{0.0, 0.0}, rng), ParameterError);
    CHECK_THROWS_AS(sample_categorical(std::vector<double>{0.5, 0.6}, rng), ParameterError);
    CHECK_THROWS_AS(sample_categorical(std::vector<double>{-0.5, 1.5}, rng), ParameterError);
    CHECK_THROWS_AS(sample_categorical(std::vector<double>{}, rng), ParameterError);
  }

  TEST_CASE("circular_distance examples") {
    CHECK(circular_distance(0, 0, 90) == 0);
    CHECK(circular_distance(0, 89, 90) == 1);
    CHECK(circular_distance(10, 55, 90) == 45);
    CHECK(circular_distance(55, 10, 90) == 45);
  }

  TEST_CASE("circular_distance is a metric bounded by half the span") {
    for (std::size_t span : {1, 2, 7, 90}) {
      for (std::size_t a = 0; a < span; ++a) {
        for (std::size_t b = 0; b < span; ++b) {
          const auto d = circular_distance(a, b, span);
          CHECK(d == circular_distance(b, a, span));
          CHECK(d <= span / 2);
          CHECK((d == 0) == (a == b));
          for (std::size_t c = 0; c < span; c += 3) {
            CHECK(d <= circular_distance(a, c, span) + circular_distance(c, b, span));
          }
        }
      }
    }
  }
}

TEST_SUITE("types") {
  TEST_CASE("vocabulary validation") {
    Vocabulary v{100, {90, 100}};
    CHECK_NOTHROW(v.validate(true));
    CHECK(v.content_size() == 90);
    CHECK_THROWS_AS((Vocabulary{1, {0, 0}}.validate(false)), ConfigError);
    CHECK_THROWS_AS((Vocabulary{100, {90, 101}}.validate(true)), ConfigError);
    CHECK_THROWS_AS((Vocabulary{100, {0, 0}}.validate(true)), ConfigError);
    CHECK_NOTHROW(Vocabulary{100, {0, 0}}.validate(false));
    CHECK_THROWS_AS((Vocabulary{100, {40, 50}}.validate(true)), ConfigError);
  }

  TEST_CASE("hyperparameters must be positive") {
    CHECK_NOTHROW(DirichletHyperparams{0.1, 0.1}.validate());
    CHECK_THROWS_AS((DirichletHyperparams{0.0, 0.1}.validate()), ConfigError);
    CHECK_THROWS_AS((DirichletHyperparams{0.1, -1.0}.validate()), ConfigError);
    CHECK_THROWS_AS((DirichletHyperparams{NAN, 0.1}.validate()), ConfigError);
  }

  TEST_CASE("shape and algorithm names round-trip") {
    for (auto s : {TopicShape::Laplace, TopicShape::Gaussian}) {
      CHECK(topic_shape_from_string(to_string(s)) == s);
    }
    for (auto a : {Algorithm::Gibbs, Algorithm::Vb}) CHECK(algorithm_from_string(to_string(a)) == a);
    CHECK_THROWS_AS(topic_shape_from_string("cauchy"), ConfigError);
    CHECK_THROWS_AS(algorithm_from_string("em"), ConfigError);
  }

  TEST_CASE("generator config lists every violation") {
    GeneratorConfig c;
    CHECK(c.violations().empty());
    c.K_m = c.K;
    c.V = 3;
    c.overlap = -1.0;
    const auto problems = c.violations();
    CHECK(problems.size() >= 3);
    CHECK_THROWS_AS(c.validate(), ConfigError);
  }

  TEST_CASE("function block is the tail of the vocabulary") {
    GeneratorConfig c;
    const Vocabulary v = c.vocabulary();
    CHECK(v.function_block.begin == 90);
    CHECK(v.function_block.end == 100);
    c.function_topic = false;
    CHECK(c.vocabulary().function_block.empty());
    CHECK(c.content_topics() == c.K);
  }

  TEST_CASE("recount tallies assignments and conserves totals") {
    const auto corpus = testing_support::make_corpus({{0, 1, 2, 1}, {2, 2}}, 3);
    const std::vector<std::vector<std::uint32_t>> z{{0, 1, 1, 0}, {1, 1}};
    const Assignments a = recount(z, corpus, 2);
    CHECK(a.count_doc_topic(0, 0) == 2);
    CHECK(a.count_doc_topic(0, 1) == 2);
    CHECK(a.count_doc_topic(1, 1) == 2);
    CHECK(a.count_topic_word(0, 1) == 1);
    CHECK(a.count_topic_word(1, 2) == 3);
    CHECK(a.count_topic[0] + a.count_topic[1] == 6);
    CHECK(counts_consistent(a, corpus));

    Assignments broken = a;
    broken.count_topic[0] += 1;
    CHECK_FALSE(counts_consistent(broken, corpus));
    CHECK_THROWS_AS(recount({{0, 5, 0, 0}, {0, 0}}, corpus, 2), InputError);
    CHECK_THROWS_AS(recount({{0}}, corpus, 2), InputError);
  }

  TEST_CASE("corpus validation catches out-of-range tokens") {
    auto c = testing_support::make_corpus({{0, 1}, {1, 0}}, 2);
    CHECK_NOTHROW(c.validate());
    c.docs[1][0] = 2;
    CHECK_THROWS_AS(c.validate(), InputError);
    CHECK(c.total_tokens() == 4);
  }
}

TEST_SUITE("matrix") {
  TEST_CASE("rows round-trip and normalize") {
    Matrix m = matrix_from_rows({{1.0, 3.0}, {2.0, 2.0}});
    CHECK(m.rows() == 2);
    CHECK(m.cols() == 2);
    CHECK(matrix_to_rows(m) == std::vector<std::vector<double>>{{1.0, 3.0}, {2.0, 2.0}});
    normalize_rows(m);
    CHECK(m(0, 0) == 0.25);
    CHECK(m(1, 1) == 0.5);
    CHECK(max_row_sum_error(m) == 0.0);
    CHECK_THROWS_AS(matrix_from_rows({{1.0}, {1.0, 2.0}}), InputError);
  }
}
