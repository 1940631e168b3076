#include "simlda/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "simlda/errors.hpp"

namespace simlda {

void CoherenceConfig::validate() const {
  if (top_n < 1) throw ConfigError("coherence: top_n must be at least 1");
  if (window < 1) throw ConfigError("coherence: window must be at least 1");
  if (!(epsilon > 0.0)) throw ConfigError("coherence: epsilon must be positive");
}

WindowStats::WindowStats(std::span<const Document> docs, std::size_t window,
                         std::span<const Token> tracked_words, std::size_t vocab_size)
    : slot_(vocab_size, -1) {
  if (window < 1) throw ConfigError("window must be at least 1");
  for (Token w : tracked_words) {
    if (w >= vocab_size) throw InputError("tracked word outside vocabulary");
    if (slot_[w] < 0) slot_[w] = static_cast<int>(tracked_++);
  }
  single_.assign(tracked_, 0);
  joint_.assign(tracked_ * tracked_, 0);

  std::vector<std::size_t> in_window(tracked_, 0);
  std::vector<std::size_t> present;
  present.reserve(tracked_);

  auto record = [&] {
    present.clear();
    for (std::size_t s = 0; s < tracked_; ++s) {
      if (in_window[s] > 0) present.push_back(s);
    }
    for (std::size_t a : present) {
      ++single_[a];
      for (std::size_t b : present) ++joint_[a * tracked_ + b];
    }
    ++windows_;
  };

  for (const Document& doc : docs) {
    std::fill(in_window.begin(), in_window.end(), 0);
    const std::size_t first = std::min(window, doc.size());
    for (std::size_t n = 0; n < first; ++n) {
      if (slot_[doc[n]] >= 0) ++in_window[slot_[doc[n]]];
    }
    record();
    for (std::size_t end = window; end < doc.size(); ++end) {
      if (slot_[doc[end - window]] >= 0) --in_window[slot_[doc[end - window]]];
      if (slot_[doc[end]] >= 0) ++in_window[slot_[doc[end]]];
      record();
    }
  }
}

double WindowStats::p(Token w) const {
  if (windows_ == 0 || w >= slot_.size() || slot_[w] < 0) return 0.0;
  return static_cast<double>(single_[slot_[w]]) / static_cast<double>(windows_);
}

double WindowStats::p(Token a, Token b) const {
  if (windows_ == 0 || a >= slot_.size() || b >= slot_.size() || slot_[a] < 0 || slot_[b] < 0) {
    return 0.0;
  }
  return static_cast<double>(joint_[slot_[a] * tracked_ + slot_[b]]) /
         static_cast<double>(windows_);
}

double npmi(Token i, Token j, const WindowStats& stats, double epsilon) {
  const double pi = stats.p(i);
  const double pj = stats.p(j);
  if (pi == 0.0 || pj == 0.0) return -1.0;
  const double joint = stats.p(i, j) + epsilon;
  const double denominator = -std::log(joint);
  if (denominator <= 0.0) return 1.0;
  const double value = std::log(joint / (pi * pj)) / denominator;
  return std::clamp(value, -1.0, 1.0);
}

std::vector<Token> top_words(std::span<const double> topic, std::size_t n) {
  if (n > topic.size()) {
    throw InputError("top_n (" + std::to_string(n) + ") exceeds vocabulary size (" +
                     std::to_string(topic.size()) + ")");
  }
  std::vector<Token> order(topic.size());
  std::iota(order.begin(), order.end(), Token{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](Token a, Token b) { return topic[a] > topic[b]; });
  order.resize(n);
  return order;
}

namespace {

double cosine(std::span<const double> a, std::span<const double> b) {
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    dot += a[i] * b[i];
    na += a[i] * a[i];
    nb += b[i] * b[i];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / (std::sqrt(na) * std::sqrt(nb));
}

}  // namespace

CoherenceReport cv_score(const Matrix& fit_phi, const Corpus& corpus,
                         const CoherenceConfig& config) {
  config.validate();
  if (corpus.docs.empty()) throw InputError("cv_score: corpus has no documents");
  if (fit_phi.cols() != corpus.vocab.size) {
    throw InputError("cv_score: topic matrix and corpus vocabulary differ");
  }

  std::vector<std::vector<Token>> tops;
  std::vector<Token> tracked;
  for (std::size_t k = 0; k < fit_phi.rows(); ++k) {
    tops.push_back(top_words(fit_phi.row(k), config.top_n));
    tracked.insert(tracked.end(), tops.back().begin(), tops.back().end());
  }
  const WindowStats stats(corpus.docs, config.window, tracked, corpus.vocab.size);

  CoherenceReport report;
  const std::size_t n = config.top_n;
  std::vector<double> context(n * n);
  std::vector<double> set_vector(n);
  for (const auto& words : tops) {
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) {
        context[a * n + b] = npmi(words[a], words[b], stats, config.epsilon);
      }
    }
    std::fill(set_vector.begin(), set_vector.end(), 0.0);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = 0; b < n; ++b) set_vector[b] += context[a * n + b];
    }
    double score = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
      score += cosine(std::span<const double>(context).subspan(a * n, n), set_vector);
    }
    report.per_topic.push_back(score / static_cast<double>(n));
  }
  report.mean = report.per_topic.empty()
                    ? 0.0
                    : std::accumulate(report.per_topic.begin(), report.per_topic.end(), 0.0) /
                          static_cast<double>(report.per_topic.size());
  return report;
}

}  // namespace simlda
