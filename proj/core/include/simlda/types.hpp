#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "simlda/matrix.hpp"

namespace simlda {

using Token = std::uint32_t;
using Document = std::vector<Token>;

/// Half-open range [begin, end) of word indices.
struct IndexRange {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const noexcept { return end - begin; }
  bool empty() const noexcept { return end == begin; }
  bool contains(std::size_t i) const noexcept { return i >= begin && i < end; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Vocabulary of `size` word indices. Content words occupy [0, begin of
/// function_block) and are arranged on a circle; the function block is
/// the tail of the index range.
struct Vocabulary {
  std::size_t size = 0;
  IndexRange function_block;

  std::size_t content_size() const noexcept { return size - function_block.size(); }
  void validate(bool function_topic_enabled) const;
  friend bool operator==(const Vocabulary&, const Vocabulary&) = default;
};

struct DirichletHyperparams {
  double alpha = 0.1;
  double beta = 0.1;

  void validate() const;
  friend bool operator==(const DirichletHyperparams&, const DirichletHyperparams&) = default;
};

enum class TopicShape { Laplace, Gaussian };

std::string_view to_string(TopicShape shape) noexcept;
TopicShape topic_shape_from_string(std::string_view name);

/// Parameters of the synthetic corpus generator.
struct GeneratorConfig {
  std::size_t M = 50;   // documents per corpus
  std::size_t V = 100;  // vocabulary size
  std::size_t N = 100;  // tokens per document
  std::size_t K = 7;    // topics, including the function topic
  std::size_t K_m = 3;  // content topics mixed into each document
  TopicShape shape = TopicShape::Laplace;
  double overlap = 0.5;                 // topic width relative to center spacing
  double function_fraction = 0.2;       // per-document mass of the function topic
  double function_block_fraction = 0.1; // share of V reserved for function words
  bool function_topic = true;
  std::uint64_t seed = 0;

  /// Throws ConfigError naming the first violated constraint.
  void validate() const;
  /// Every violated constraint, one message each. Empty when valid.
  std::vector<std::string> violations() const;

  std::size_t function_block_size() const;
  std::size_t content_topics() const noexcept { return function_topic ? K - 1 : K; }
  Vocabulary vocabulary() const;

  friend bool operator==(const GeneratorConfig&, const GeneratorConfig&) = default;
};

/// True distributions a corpus was sampled from.
struct GroundTruthModel {
  Matrix phi;    // K x V word-topic probabilities
  Matrix theta;  // M x K document-topic proportions
  std::size_t K = 0;
  bool includes_function_topic = false;
};

struct Corpus {
  std::vector<Document> docs;
  Vocabulary vocab;
  std::uint64_t seed = 0;
  GeneratorConfig gen_params;

  std::size_t num_docs() const noexcept { return docs.size(); }
  std::size_t total_tokens() const noexcept;
  /// Corpus frequency of every word index.
  std::vector<std::int64_t> word_counts() const;
  /// Throws InputError when a token is out of range.
  void validate() const;
};

/// Topic labels for every token plus the count tables they imply.
struct Assignments {
  std::vector<std::vector<std::uint32_t>> z;
  CountMatrix count_doc_topic;   // M x K
  CountMatrix count_topic_word;  // K x V
  std::vector<std::int64_t> count_topic;
};

/// Rebuilds every count table from `z` and the corpus tokens.
Assignments recount(const std::vector<std::vector<std::uint32_t>>& z, const Corpus& corpus,
                    std::size_t K);

/// True when the count tables of `a` equal recount(a.z, corpus, K).
bool counts_consistent(const Assignments& a, const Corpus& corpus);

enum class Algorithm { Gibbs, Vb };

std::string_view to_string(Algorithm algo) noexcept;
Algorithm algorithm_from_string(std::string_view name);

/// Point estimate produced by an inference algorithm.
struct FitResult {
  Matrix phi_hat;    // K x V
  Matrix theta_hat;  // M x K
  Algorithm algorithm = Algorithm::Gibbs;
  std::size_t iterations = 0;
  double wall_seconds = 0.0;
  std::uint64_t seed = 0;
  DirichletHyperparams hyper;
};

}  // namespace simlda
