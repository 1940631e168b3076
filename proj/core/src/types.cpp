#include "simlda/types.hpp"

#include <cmath>
#include <string>

#include "simlda/errors.hpp"

namespace simlda {

void Vocabulary::validate(bool function_topic_enabled) const {
  if (size < 2) throw ConfigError("vocabulary size must be at least 2");
  if (function_block.begin > function_block.end || function_block.end > size) {
    throw ConfigError("function block must lie inside the vocabulary");
  }
  if (function_topic_enabled && function_block.empty()) {
    throw ConfigError("function block is empty but the function topic is enabled");
  }
  if (!function_block.empty() && function_block.end != size) {
    throw ConfigError("function block must be the tail of the vocabulary");
  }
}

void DirichletHyperparams::validate() const {
  if (!(alpha > 0.0) || !std::isfinite(alpha)) throw ConfigError("alpha must be positive");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ConfigError("beta must be positive");
}

std::string_view to_string(TopicShape shape) noexcept {
  return shape == TopicShape::Laplace ? "laplace" : "gaussian";
}

TopicShape topic_shape_from_string(std::string_view name) {
  if (name == "laplace" || name == "Laplace") return TopicShape::Laplace;
  if (name == "gaussian" || name == "Gaussian") return TopicShape::Gaussian;
  throw ConfigError("unknown topic shape '" + std::string(name) + "'");
}

std::string_view to_string(Algorithm algo) noexcept {
  return algo == Algorithm::Gibbs ? "gibbs" : "vb";
}

Algorithm algorithm_from_string(std::string_view name) {
  if (name == "gibbs") return Algorithm::Gibbs;
  if (name == "vb") return Algorithm::Vb;
  throw ConfigError("unknown algorithm '" + std::string(name) + "'");
}

std::size_t GeneratorConfig::function_block_size() const {
  if (!function_topic) return 0;
  return static_cast<std::size_t>(std::llround(function_block_fraction * static_cast<double>(V)));
}

std::vector<std::string> GeneratorConfig::violations() const {
  std::vector<std::string> out;
  if (V < 2) out.emplace_back("V must be at least 2");
  if (N < 1) out.emplace_back("N must be at least 1");
  if (K < (function_topic ? 2u : 1u)) {
    out.emplace_back(function_topic ? "K must be at least 2 (one content topic plus the function topic)"
                                    : "K must be at least 1");
  }
  if (V < K) out.emplace_back("V must be at least K");
  if (K >= (function_topic ? 2u : 1u) && (K_m < 1 || K_m > content_topics())) {
    out.emplace_back(function_topic ? "K_m must satisfy 1 <= K_m <= K - 1"
                                    : "K_m must satisfy 1 <= K_m <= K");
  }
  if (!(overlap > 0.0 && overlap <= 1.0)) out.emplace_back("overlap must lie in (0, 1]");
  if (!(function_fraction >= 0.0 && function_fraction < 1.0)) {
    out.emplace_back("function_fraction must lie in [0, 1)");
  }
  if (function_topic) {
    if (!(function_block_fraction > 0.0 && function_block_fraction < 1.0)) {
      out.emplace_back("function_block_fraction must lie in (0, 1)");
    } else {
      const std::size_t vf = function_block_size();
      if (vf >= V) {
        out.emplace_back("function block (V_f) must be smaller than V");
      } else if (vf == 0) {
        out.emplace_back("function block rounds to zero words; increase function_block_fraction");
      } else if (K >= 2 && V - vf < K - 1) {
        out.emplace_back("content vocabulary V - V_f must hold at least K - 1 words");
      }
    }
  }
  return out;
}

void GeneratorConfig::validate() const {
  const auto problems = violations();
  if (!problems.empty()) throw ConfigError(problems.front());
}

Vocabulary GeneratorConfig::vocabulary() const {
  const std::size_t vf = function_block_size();
  return Vocabulary{V, IndexRange{V - vf, V}};
}

std::size_t Corpus::total_tokens() const noexcept {
  std::size_t total = 0;
  for (const auto& d : docs) total += d.size();
  return total;
}

std::vector<std::int64_t> Corpus::word_counts() const {
  std::vector<std::int64_t> counts(vocab.size, 0);
  for (const auto& d : docs) {
    for (Token w : d) ++counts[w];
  }
  return counts;
}

void Corpus::validate() const {
  for (std::size_t m = 0; m < docs.size(); ++m) {
    for (Token w : docs[m]) {
      if (w >= vocab.size) {
        throw InputError("document " + std::to_string(m) + " has token " + std::to_string(w) +
                         " outside vocabulary of size " + std::to_string(vocab.size));
      }
    }
  }
}

Assignments recount(const std::vector<std::vector<std::uint32_t>>& z, const Corpus& corpus,
                    std::size_t K) {
  if (z.size() != corpus.docs.size()) throw InputError("assignment/document count mismatch");
  Assignments a;
  a.z = z;
  a.count_doc_topic = CountMatrix(corpus.docs.size(), K, 0);
  a.count_topic_word = CountMatrix(K, corpus.vocab.size, 0);
  a.count_topic.assign(K, 0);
  for (std::size_t m = 0; m < z.size(); ++m) {
    if (z[m].size() != corpus.docs[m].size()) throw InputError("assignment/token count mismatch");
    for (std::size_t n = 0; n < z[m].size(); ++n) {
      const std::size_t k = z[m][n];
      if (k >= K) throw InputError("topic label out of range");
      ++a.count_doc_topic(m, k);
      ++a.count_topic_word(k, corpus.docs[m][n]);
      ++a.count_topic[k];
    }
  }
  return a;
}

bool counts_consistent(const Assignments& a, const Corpus& corpus) {
  const Assignments fresh = recount(a.z, corpus, a.count_topic.size());
  return fresh.count_doc_topic == a.count_doc_topic &&
         fresh.count_topic_word == a.count_topic_word && fresh.count_topic == a.count_topic;
}

}  // namespace simlda
