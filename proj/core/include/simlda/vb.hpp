#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "simlda/random.hpp"
#include "simlda/types.hpp"

namespace simlda {

struct VbConfig {
  std::size_t epochs = 150;
  std::size_t inner_doc_iters = 50;
  /// Per-document stopping rule: mean |delta gamma_mk| over k.
  double doc_convergence_tol = 1e-6;
  /// Stop once an epoch improves the ELBO by less than this, relative.
  double elbo_rel_tol = 1e-6;
  /// Scale of the Gamma(100, 1/100) perturbation added to beta when
  /// initializing lambda.
  double init_scale = 1.0;
  DirichletHyperparams hyper{0.5, 0.5};
  std::size_t K = 7;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Variational Dirichlet parameters of the mean-field posterior.
struct VariationalState {
  Matrix lambda;  // K x V, word-topic
  Matrix gamma;   // M x K, document-topic
  std::vector<double> elbo_trace;
};

/// Softmax of log weights with max subtraction. Output sums to 1.
std::vector<double> log_space_responsibilities(std::span<const double> log_weights);

/// Mean-field evidence lower bound of (lambda, gamma), with the token
/// responsibilities set to their optimum given both. Throws InputError on
/// dimension mismatch.
double compute_elbo(const Corpus& corpus, const VariationalState& state,
                    const DirichletHyperparams& hyper);

/// Batch coordinate-ascent VB for smoothed LDA.
///
/// Each epoch runs, for every document, alternating updates
///   phi_nk ∝ exp(E[log theta_mk] + E[log beta_k,w_n])
///   gamma_mk = alpha + sum_n phi_nk
/// until gamma settles, then sets lambda_kv = beta + sum of phi over
/// tokens of word v. gamma is warm-started across epochs, which keeps the
/// per-epoch ELBO non-decreasing.
class VbInference {
 public:
  VbInference(const Corpus& corpus, const VbConfig& config);

  /// One E-step over all documents followed by the lambda update.
  /// Returns the ELBO of the new state.
  double epoch();

  const VariationalState& state() const noexcept { return state_; }
  std::size_t epochs_done() const noexcept { return state_.elbo_trace.size(); }

 private:
  struct WordCount {
    Token word;
    double count;
  };

  const Corpus& corpus_;
  VbConfig config_;
  std::size_t K_;
  std::size_t V_;
  VariationalState state_;
  std::vector<std::vector<WordCount>> bags_;
};

struct VbOutcome {
  FitResult fit;
  VariationalState state;
};

/// Runs up to config.epochs epochs. Throws InputError for an empty corpus.
VbOutcome vb_run(const Corpus& corpus, const VbConfig& config);
FitResult vb_fit(const Corpus& corpus, const VbConfig& config);

}  // namespace simlda
