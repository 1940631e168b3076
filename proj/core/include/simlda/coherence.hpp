#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simlda/types.hpp"

namespace simlda {

struct CoherenceConfig {
  std::size_t top_n = 10;
  std::size_t window = 110;
  double epsilon = 1e-12;

  void validate() const;
};

/// Boolean sliding-window occurrence statistics for a fixed set of words.
///
/// Windows have the configured width and stride 1; a document no longer
/// than the window contributes exactly one window. A window "contains" a
/// word if the word occurs anywhere inside it.
class WindowStats {
 public:
  WindowStats(std::span<const Document> docs, std::size_t window,
              std::span<const Token> tracked_words, std::size_t vocab_size);

  std::size_t windows() const noexcept { return windows_; }
  /// Fraction of windows containing `w`. Zero for untracked words.
  double p(Token w) const;
  /// Fraction of windows containing both words.
  double p(Token a, Token b) const;

 private:
  std::vector<int> slot_;  // word -> tracked slot or -1
  std::size_t tracked_ = 0;
  std::size_t windows_ = 0;
  std::vector<std::size_t> single_;
  std::vector<std::size_t> joint_;  // tracked x tracked
};

/// Normalized pointwise mutual information
///   ln((p_ij + eps) / (p_i p_j)) / -ln(p_ij + eps),
/// clamped to [-1, 1]. A word that never occurs scores -1 against
/// everything; p_ij + eps >= 1 scores 1.
double npmi(Token i, Token j, const WindowStats& stats, double epsilon);

/// Indices of the n most probable words of `topic`, descending; ties go to
/// the lower index.
std::vector<Token> top_words(std::span<const double> topic, std::size_t n);

struct CoherenceReport {
  std::vector<double> per_topic;
  double mean = 0.0;
};

/// C_v coherence: top-n words per topic, one-set segmentation, NPMI
/// context vectors and indirect cosine similarity against the summed
/// vector of the whole top-word set.
CoherenceReport cv_score(const Matrix& fit_phi, const Corpus& corpus,
                         const CoherenceConfig& config);

}  // namespace simlda
