#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "simlda/random.hpp"
#include "simlda/types.hpp"

namespace simlda {

/// A named generation regime with the inference hyperparameters that go
/// with it.
struct Preset {
  std::string name;
  GeneratorConfig generator;
  DirichletHyperparams hyper;
};

/// V=100, N=100, K=7 (6 content + function topic), K_m=3, Laplace, alpha=beta=0.5.
Preset smaller_preset();
/// V=500, N=120, K=10 (9 content + function topic), K_m=5, Gaussian, alpha=beta=0.1.
Preset larger_preset();
/// "smaller" or "larger"; throws ConfigError otherwise.
Preset preset_by_name(std::string_view name);

/// Center word of content topic k on the circle of content words.
std::size_t topic_center(const GeneratorConfig& config, std::size_t k);

/// K x V word-topic matrix. Content topics decay with circular distance
/// from equally spaced centers (Laplace: exp(-d/b), Gaussian:
/// exp(-d^2/2b^2), b = overlap * spacing); the last row, when the
/// function topic is enabled, is flat over the function block.
Matrix build_ground_truth_topics(const GeneratorConfig& config);

struct SampledDocument {
  Document tokens;
  std::vector<double> theta;  // length K, zeros on inactive topics
};

SampledDocument sample_document(const Matrix& phi, const GeneratorConfig& config, Rng& rng);

struct GeneratedCorpus {
  Corpus corpus;
  GroundTruthModel truth;
};

/// Samples config.M documents. Document m draws from the child stream
/// Rng(config.seed).child(m), so documents are independent of each other
/// and of M.
GeneratedCorpus generate_corpus(const GeneratorConfig& config);

/// `group_size` corpora; corpus i uses seed derive_seed(config.seed, i).
std::vector<GeneratedCorpus> generate_group(const GeneratorConfig& config,
                                            std::size_t group_size);

}  // namespace simlda
