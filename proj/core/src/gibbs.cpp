#include "simlda/gibbs.hpp"

#include <chrono>
#include <cmath>
#include <string>

#include "simlda/errors.hpp"

namespace simlda {

void GibbsConfig::validate() const {
  hyper.validate();
  if (iterations < 1) throw ConfigError("gibbs: iterations must be positive");
  if (!(burn_in_fraction >= 0.0 && burn_in_fraction < 1.0)) {
    throw ConfigError("gibbs: burn_in_fraction must lie in [0, 1)");
  }
  if (thin < 1) throw ConfigError("gibbs: thin must be positive");
  if (K < 1) throw ConfigError("gibbs: K must be positive");
  if (estimator == GibbsEstimator::ThinnedMean && retained_samples() < 1) {
    throw ConfigError("gibbs: no post-burn-in sample is retained; raise iterations or lower thin");
  }
}

std::size_t GibbsConfig::burn_in() const {
  return static_cast<std::size_t>(std::floor(static_cast<double>(iterations) * burn_in_fraction));
}

std::size_t GibbsConfig::retained_samples() const { return (iterations - burn_in()) / thin; }

std::vector<double> conditional_distribution(const Assignments& counts, std::size_t m,
                                             std::size_t n, Token v,
                                             const DirichletHyperparams& hyper, std::size_t K,
                                             std::size_t V) {
  if (m >= counts.count_doc_topic.rows() || v >= counts.count_topic_word.cols() ||
      K != counts.count_topic.size()) {
    throw InputError("conditional_distribution: index outside count tables");
  }
  std::vector<double> p(K);
  double total = 0.0;
  for (std::size_t k = 0; k < K; ++k) {
    const std::int64_t doc = counts.count_doc_topic(m, k);
    const std::int64_t word = counts.count_topic_word(k, v);
    const std::int64_t topic = counts.count_topic[k];
    if (doc < 0 || word < 0 || topic < 0) {
      throw InternalError("negative excluded count at document " + std::to_string(m) +
                          ", position " + std::to_string(n));
    }
    p[k] = (static_cast<double>(doc) + hyper.alpha) * (static_cast<double>(word) + hyper.beta) /
           (static_cast<double>(topic) + static_cast<double>(V) * hyper.beta);
    total += p[k];
  }
  for (double& x : p) x /= total;
  return p;
}

GibbsSampler::GibbsSampler(const Corpus& corpus, const GibbsConfig& config)
    : corpus_(corpus),
      config_(config),
      K_(config.K),
      V_(corpus.vocab.size),
      rng_(config.seed) {
  config_.validate();
  if (corpus.docs.empty()) throw InputError("gibbs: corpus has no documents");
  corpus.validate();

  const std::size_t M = corpus.docs.size();
  doc_topic_.assign(M * K_, 0);
  word_topic_.assign(V_ * K_, 0);
  topic_.assign(K_, 0);
  cumulative_.assign(K_, 0.0);
  z_.resize(M);
  for (std::size_t m = 0; m < M; ++m) {
    const Document& doc = corpus.docs[m];
    z_[m].resize(doc.size());
    for (std::size_t n = 0; n < doc.size(); ++n) {
      const auto k = static_cast<std::uint32_t>(rng_.uniform_index(K_));
      z_[m][n] = k;
      ++doc_topic_[m * K_ + k];
      ++word_topic_[doc[n] * K_ + k];
      ++topic_[k];
    }
  }
  const double vbeta = static_cast<double>(V_) * config_.hyper.beta;
  inv_denominator_.resize(K_);
  for (std::size_t k = 0; k < K_; ++k) {
    inv_denominator_[k] = 1.0 / (static_cast<double>(topic_[k]) + vbeta);
  }
}

void GibbsSampler::sweep() {
  const double alpha = config_.hyper.alpha;
  const double beta = config_.hyper.beta;
  const double vbeta = static_cast<double>(V_) * beta;

  for (std::size_t m = 0; m < corpus_.docs.size(); ++m) {
    const Document& doc = corpus_.docs[m];
    std::int32_t* dt = doc_topic_.data() + m * K_;
    for (std::size_t n = 0; n < doc.size(); ++n) {
      std::int32_t* wt = word_topic_.data() + doc[n] * K_;
      std::uint32_t k = z_[m][n];
      --dt[k];
      --wt[k];
      --topic_[k];
      inv_denominator_[k] = 1.0 / (static_cast<double>(topic_[k]) + vbeta);

      double total = 0.0;
      for (std::size_t j = 0; j < K_; ++j) {
        total += (static_cast<double>(dt[j]) + alpha) * (static_cast<double>(wt[j]) + beta) *
                 inv_denominator_[j];
        cumulative_[j] = total;
      }
      const double u = rng_.uniform() * total;
      k = 0;
      while (k + 1 < K_ && !(u < cumulative_[k])) ++k;

      z_[m][n] = k;
      ++dt[k];
      ++wt[k];
      ++topic_[k];
      inv_denominator_[k] = 1.0 / (static_cast<double>(topic_[k]) + vbeta);
    }
  }
  ++sweeps_;
}

Assignments GibbsSampler::assignments() const {
  Assignments a;
  a.z = z_;
  const std::size_t M = corpus_.docs.size();
  a.count_doc_topic = CountMatrix(M, K_, 0);
  a.count_topic_word = CountMatrix(K_, V_, 0);
  a.count_topic.assign(topic_.begin(), topic_.end());
  for (std::size_t m = 0; m < M; ++m) {
    for (std::size_t k = 0; k < K_; ++k) a.count_doc_topic(m, k) = doc_topic_[m * K_ + k];
  }
  for (std::size_t v = 0; v < V_; ++v) {
    for (std::size_t k = 0; k < K_; ++k) a.count_topic_word(k, v) = word_topic_[v * K_ + k];
  }
  return a;
}

Matrix GibbsSampler::phi_estimate() const {
  const double beta = config_.hyper.beta;
  const double vbeta = static_cast<double>(V_) * beta;
  Matrix phi(K_, V_);
  for (std::size_t k = 0; k < K_; ++k) {
    const double denom = static_cast<double>(topic_[k]) + vbeta;
    for (std::size_t v = 0; v < V_; ++v) {
      phi(k, v) = (static_cast<double>(word_topic_[v * K_ + k]) + beta) / denom;
    }
  }
  return phi;
}

Matrix GibbsSampler::theta_estimate() const {
  const double alpha = config_.hyper.alpha;
  const double kalpha = static_cast<double>(K_) * alpha;
  const std::size_t M = corpus_.docs.size();
  Matrix theta(M, K_);
  for (std::size_t m = 0; m < M; ++m) {
    const double denom = static_cast<double>(corpus_.docs[m].size()) + kalpha;
    for (std::size_t k = 0; k < K_; ++k) {
      theta(m, k) = (static_cast<double>(doc_topic_[m * K_ + k]) + alpha) / denom;
    }
  }
  return theta;
}

namespace {

// Running mean; exact (bitwise) when every sample is identical.
void accumulate_mean(Matrix& mean, const Matrix& sample, std::size_t samples_so_far) {
  if (samples_so_far == 0) {
    mean = sample;
    return;
  }
  const double weight = 1.0 / static_cast<double>(samples_so_far + 1);
  auto dst = mean.data();
  const auto src = sample.data();
  for (std::size_t i = 0; i < dst.size(); ++i) dst[i] += (src[i] - dst[i]) * weight;
}

}  // namespace

FitResult gibbs_fit(const Corpus& corpus, const GibbsConfig& config) {
  config.validate();
  if (corpus.docs.empty()) throw InputError("gibbs: corpus has no documents");
  const auto start = std::chrono::steady_clock::now();

  GibbsSampler sampler(corpus, config);
  FitResult fit;
  fit.algorithm = Algorithm::Gibbs;
  fit.seed = config.seed;
  fit.hyper = config.hyper;

  const std::size_t burn_in = config.burn_in();
  std::size_t samples = 0;
  for (std::size_t t = 1; t <= config.iterations; ++t) {
    sampler.sweep();
    if (config.estimator == GibbsEstimator::ThinnedMean && t > burn_in &&
        (t - burn_in) % config.thin == 0) {
      accumulate_mean(fit.phi_hat, sampler.phi_estimate(), samples);
      accumulate_mean(fit.theta_hat, sampler.theta_estimate(), samples);
      ++samples;
    }
  }
  if (config.estimator == GibbsEstimator::FinalState) {
    fit.phi_hat = sampler.phi_estimate();
    fit.theta_hat = sampler.theta_estimate();
  }
  fit.iterations = config.iterations;
  fit.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return fit;
}

}  // namespace simlda
