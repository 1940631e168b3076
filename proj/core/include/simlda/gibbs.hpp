#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "simlda/random.hpp"
#include "simlda/types.hpp"

namespace simlda {

enum class GibbsEstimator {
  ThinnedMean,  // mean over every thin-th post-burn-in state
  FinalState,   // estimate from the last state only
};

struct GibbsConfig {
  std::size_t iterations = 5000;
  double burn_in_fraction = 0.8;
  std::size_t thin = 10;
  DirichletHyperparams hyper{0.5, 0.5};
  std::size_t K = 7;
  std::uint64_t seed = 0;
  GibbsEstimator estimator = GibbsEstimator::ThinnedMean;

  void validate() const;
  /// Number of sweeps discarded before sampling starts.
  std::size_t burn_in() const;
  /// Number of states averaged by the ThinnedMean estimator.
  std::size_t retained_samples() const;
};

/// Full conditional of one token's topic under collapsed LDA:
///   p(z = k) ∝ (n_mk + alpha) (n_kv + beta) / (n_k + V beta)
/// `counts` must already exclude the token being resampled. Throws
/// InternalError if any count it reads is negative.
std::vector<double> conditional_distribution(const Assignments& counts, std::size_t m,
                                             std::size_t n, Token v,
                                             const DirichletHyperparams& hyper, std::size_t K,
                                             std::size_t V);

/// Collapsed Gibbs chain over a fixed corpus. Sweeps visit documents in
/// order and tokens in position order.
class GibbsSampler {
 public:
  GibbsSampler(const Corpus& corpus, const GibbsConfig& config);

  void sweep();
  std::size_t sweeps_done() const noexcept { return sweeps_; }

  /// Snapshot of labels and count tables in the shared Assignments layout.
  Assignments assignments() const;
  /// (n_kv + beta) / (n_k + V beta) for the current state.
  Matrix phi_estimate() const;
  /// (n_mk + alpha) / (N_m + K alpha) for the current state.
  Matrix theta_estimate() const;

 private:
  const Corpus& corpus_;
  GibbsConfig config_;
  std::size_t K_;
  std::size_t V_;
  Rng rng_;
  std::size_t sweeps_ = 0;

  std::vector<std::vector<std::uint32_t>> z_;
  std::vector<std::int32_t> doc_topic_;   // M x K
  std::vector<std::int32_t> word_topic_;  // V x K, word-major for locality
  std::vector<std::int32_t> topic_;       // K
  std::vector<double> inv_denominator_;   // 1 / (n_k + V beta)
  std::vector<double> cumulative_;
};

/// Runs config.iterations sweeps and returns the configured estimate.
/// Throws InputError for an empty corpus.
FitResult gibbs_fit(const Corpus& corpus, const GibbsConfig& config);

}  // namespace simlda
