#include "simlda/simgen.hpp"

#include <cmath>
#include <numeric>

#include "simlda/errors.hpp"

namespace simlda {

Preset smaller_preset() {
  Preset p;
  p.name = "smaller";
  p.generator.M = 50;
  p.generator.V = 100;
  p.generator.N = 100;
  p.generator.K = 7;
  p.generator.K_m = 3;
  p.generator.shape = TopicShape::Laplace;
  p.hyper = {0.5, 0.5};
  return p;
}

Preset larger_preset() {
  Preset p;
  p.name = "larger";
  p.generator.M = 100;
  p.generator.V = 500;
  p.generator.N = 120;
  p.generator.K = 10;
  p.generator.K_m = 5;
  p.generator.shape = TopicShape::Gaussian;
  p.hyper = {0.1, 0.1};
  return p;
}

Preset preset_by_name(std::string_view name) {
  if (name == "smaller") return smaller_preset();
  if (name == "larger") return larger_preset();
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected smaller or larger)");
}

namespace {

double center_spacing(const GeneratorConfig& config) {
  return static_cast<double>(config.vocabulary().content_size()) /
         static_cast<double>(config.content_topics());
}

}  // namespace

std::size_t topic_center(const GeneratorConfig& config, std::size_t k) {
  // Integer step so that every pair of neighbouring centers is exactly
  // round(spacing) apart; any remainder ends up in the wrap-around gap.
  const auto step = static_cast<std::size_t>(std::llround(center_spacing(config)));
  return (k * step) % config.vocabulary().content_size();
}

Matrix build_ground_truth_topics(const GeneratorConfig& config) {
  config.validate();
  const Vocabulary vocab = config.vocabulary();
  const std::size_t content_words = vocab.content_size();
  const std::size_t content_topics = config.content_topics();
  const double width = config.overlap * center_spacing(config);

  Matrix phi(config.K, config.V, 0.0);
  for (std::size_t k = 0; k < content_topics; ++k) {
    const std::size_t center = topic_center(config, k);
    auto row = phi.row(k);
    for (std::size_t v = 0; v < content_words; ++v) {
      const auto d = static_cast<double>(circular_distance(v, center, content_words));
      row[v] = config.shape == TopicShape::Laplace ? std::exp(-d / width)
                                                   : std::exp(-d * d / (2.0 * width * width));
    }
  }
  if (config.function_topic) {
    auto row = phi.row(config.K - 1);
    const double mass = 1.0 / static_cast<double>(vocab.function_block.size());
    for (std::size_t v = vocab.function_block.begin; v < vocab.function_block.end; ++v) {
      row[v] = mass;
    }
  }
  normalize_rows(phi);
  return phi;
}

SampledDocument sample_document(const Matrix& phi, const GeneratorConfig& config, Rng& rng) {
  const std::size_t content_topics = config.content_topics();

  // Partial Fisher-Yates: the first K_m entries become the active set.
  std::vector<std::size_t> topics(content_topics);
  std::iota(topics.begin(), topics.end(), std::size_t{0});
  for (std::size_t i = 0; i < config.K_m; ++i) {
    const std::size_t j = i + rng.uniform_index(content_topics - i);
    std::swap(topics[i], topics[j]);
  }

  // Flat Dirichlet over the active content topics, with the function topic
  // appended at concentration c = f K_m / (1 - f). Its share is then
  // Beta(c, K_m) with mean f, and the content shares are a flat Dirichlet
  // scaled by the remainder.
  const bool with_function = config.function_topic && config.function_fraction > 0.0;
  std::vector<double> concentration(config.K_m, 1.0);
  if (with_function) {
    concentration.push_back(config.function_fraction * static_cast<double>(config.K_m) /
                            (1.0 - config.function_fraction));
  }
  const std::vector<double> proportions = sample_dirichlet(concentration, rng);

  SampledDocument doc;
  doc.theta.assign(config.K, 0.0);
  for (std::size_t i = 0; i < config.K_m; ++i) doc.theta[topics[i]] = proportions[i];
  if (with_function) doc.theta[config.K - 1] = proportions[config.K_m];

  doc.tokens.resize(config.N);
  for (std::size_t n = 0; n < config.N; ++n) {
    const std::size_t z = sample_categorical(doc.theta, rng);
    doc.tokens[n] = static_cast<Token>(sample_categorical(phi.row(z), rng));
  }
  return doc;
}

GeneratedCorpus generate_corpus(const GeneratorConfig& config) {
  config.validate();
  GeneratedCorpus out;
  out.truth.phi = build_ground_truth_topics(config);
  out.truth.theta = Matrix(config.M, config.K, 0.0);
  out.truth.K = config.K;
  out.truth.includes_function_topic = config.function_topic;

  out.corpus.vocab = config.vocabulary();
  out.corpus.seed = config.seed;
  out.corpus.gen_params = config;
  out.corpus.docs.reserve(config.M);

  const Rng root(config.seed);
  for (std::size_t m = 0; m < config.M; ++m) {
    Rng rng = root.child(m);
    SampledDocument doc = sample_document(out.truth.phi, config, rng);
    std::copy(doc.theta.begin(), doc.theta.end(), out.truth.theta.row(m).begin());
    out.corpus.docs.push_back(std::move(doc.tokens));
  }
  return out;
}

std::vector<GeneratedCorpus> generate_group(const GeneratorConfig& config,
                                            std::size_t group_size) {
  if (group_size < 1) throw ParameterError("group_size must be at least 1");
  std::vector<GeneratedCorpus> group;
  group.reserve(group_size);
  for (std::size_t i = 0; i < group_size; ++i) {
    GeneratorConfig member = config;
    member.seed = derive_seed(config.seed, i);
    group.push_back(generate_corpus(member));
  }
  return group;
}

}  // namespace simlda
