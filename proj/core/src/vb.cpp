#include "simlda/vb.hpp"

#include <algorithm>
#include <boost/math/special_functions/digamma.hpp>
#include <chrono>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>

#include "simlda/errors.hpp"

namespace simlda {

namespace {

double digamma(double x) { return boost::math::digamma(x); }

double row_sum(std::span<const double> row) {
  return std::accumulate(row.begin(), row.end(), 0.0);
}

// E[log x_i] under Dirichlet(params), written into out.
void expected_log(std::span<const double> params, std::span<double> out) {
  const double total = digamma(row_sum(params));
  for (std::size_t i = 0; i < params.size(); ++i) out[i] = digamma(params[i]) - total;
}

double log_sum_exp(std::span<const double> x) {
  const double top = *std::max_element(x.begin(), x.end());
  double total = 0.0;
  for (double v : x) total += std::exp(v - top);
  return top + std::log(total);
}

// log B(params)^-1 part shared by both prior and posterior Dirichlet terms:
// sum_i (prior - param_i) E[log x_i] + sum_i lgamma(param_i) - lgamma(sum param).
double dirichlet_entropy_terms(std::span<const double> params, std::span<const double> elog,
                               double prior) {
  double total = 0.0;
  for (std::size_t i = 0; i < params.size(); ++i) {
    total += (prior - params[i]) * elog[i] + std::lgamma(params[i]);
  }
  return total - std::lgamma(row_sum(params));
}

}  // namespace

void VbConfig::validate() const {
  hyper.validate();
  if (epochs < 1) throw ConfigError("vb: epochs must be at least 1");
  if (inner_doc_iters < 1) throw ConfigError("vb: inner_doc_iters must be at least 1");
  if (!(doc_convergence_tol >= 0.0)) throw ConfigError("vb: doc_convergence_tol must be >= 0");
  if (!(elbo_rel_tol >= 0.0)) throw ConfigError("vb: elbo_rel_tol must be >= 0");
  if (!(init_scale >= 0.0)) throw ConfigError("vb: init_scale must be >= 0");
  if (K < 1) throw ConfigError("vb: K must be positive");
}

std::vector<double> log_space_responsibilities(std::span<const double> log_weights) {
  std::vector<double> out(log_weights.begin(), log_weights.end());
  const double top = *std::max_element(out.begin(), out.end());
  double total = 0.0;
  for (double& x : out) {
    x = std::exp(x - top);
    total += x;
  }
  for (double& x : out) x /= total;
  return out;
}

double compute_elbo(const Corpus& corpus, const VariationalState& state,
                    const DirichletHyperparams& hyper) {
  const std::size_t K = state.lambda.rows();
  const std::size_t V = state.lambda.cols();
  if (V != corpus.vocab.size || state.gamma.rows() != corpus.docs.size() ||
      (state.gamma.rows() > 0 && state.gamma.cols() != K)) {
    throw InputError("compute_elbo: state dimensions do not match the corpus");
  }
  const double alpha = hyper.alpha;
  const double beta = hyper.beta;

  Matrix elog_beta(K, V);
  for (std::size_t k = 0; k < K; ++k) expected_log(state.lambda.row(k), elog_beta.row(k));

  double elbo = 0.0;
  const double doc_prior_norm =
      std::lgamma(static_cast<double>(K) * alpha) - static_cast<double>(K) * std::lgamma(alpha);
  std::vector<double> elog_theta(K);
  std::vector<double> scratch(K);
  for (std::size_t m = 0; m < corpus.docs.size(); ++m) {
    const auto gamma = state.gamma.row(m);
    expected_log(gamma, elog_theta);
    for (Token w : corpus.docs[m]) {
      for (std::size_t k = 0; k < K; ++k) scratch[k] = elog_theta[k] + elog_beta(k, w);
      elbo += log_sum_exp(scratch);
    }
    elbo += dirichlet_entropy_terms(gamma, elog_theta, alpha) + doc_prior_norm;
  }

  const double topic_prior_norm =
      std::lgamma(static_cast<double>(V) * beta) - static_cast<double>(V) * std::lgamma(beta);
  for (std::size_t k = 0; k < K; ++k) {
    elbo += dirichlet_entropy_terms(state.lambda.row(k), elog_beta.row(k), beta) +
            topic_prior_norm;
  }
  return elbo;
}

VbInference::VbInference(const Corpus& corpus, const VbConfig& config)
    : corpus_(corpus), config_(config), K_(config.K), V_(corpus.vocab.size) {
  config_.validate();
  if (corpus.docs.empty()) throw InputError("vb: corpus has no documents");
  corpus.validate();

  Rng rng(config_.seed);
  state_.lambda = Matrix(K_, V_);
  for (double& x : state_.lambda.data()) {
    x = config_.hyper.beta + config_.init_scale * rng.gamma(100.0) / 100.0;
  }
  state_.gamma = Matrix(corpus.docs.size(), K_);
  bags_.resize(corpus.docs.size());
  for (std::size_t m = 0; m < corpus.docs.size(); ++m) {
    const Document& doc = corpus.docs[m];
    const double init =
        config_.hyper.alpha + static_cast<double>(doc.size()) / static_cast<double>(K_);
    for (double& g : state_.gamma.row(m)) g = init;

    std::map<Token, double> counts;
    for (Token w : doc) counts[w] += 1.0;
    bags_[m].reserve(counts.size());
    for (const auto& [w, c] : counts) bags_[m].push_back({w, c});
  }
}

double VbInference::epoch() {
  const double alpha = config_.hyper.alpha;
  const double beta = config_.hyper.beta;

  // Word-major E[log beta] for the inner loop.
  std::vector<double> elog_beta(V_ * K_);
  std::vector<double> row_elog(V_);
  for (std::size_t k = 0; k < K_; ++k) {
    expected_log(state_.lambda.row(k), row_elog);
    for (std::size_t v = 0; v < V_; ++v) elog_beta[v * K_ + k] = row_elog[v];
  }

  Matrix sstats(K_, V_, 0.0);
  std::vector<double> elog_theta(K_);
  std::vector<double> new_gamma(K_);
  std::vector<double> resp(K_);
  std::vector<std::vector<double>> doc_resp;

  for (std::size_t m = 0; m < bags_.size(); ++m) {
    const auto& bag = bags_[m];
    auto gamma = state_.gamma.row(m);
    doc_resp.assign(bag.size(), std::vector<double>(K_));

    for (std::size_t it = 0; it < config_.inner_doc_iters; ++it) {
      expected_log(gamma, elog_theta);
      std::fill(new_gamma.begin(), new_gamma.end(), 0.0);
      for (std::size_t i = 0; i < bag.size(); ++i) {
        const double* eb = elog_beta.data() + bag[i].word * K_;
        double top = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < K_; ++k) {
          resp[k] = elog_theta[k] + eb[k];
          top = std::max(top, resp[k]);
        }
        double total = 0.0;
        for (std::size_t k = 0; k < K_; ++k) {
          resp[k] = std::exp(resp[k] - top);
          total += resp[k];
        }
        auto& stored = doc_resp[i];
        for (std::size_t k = 0; k < K_; ++k) {
          stored[k] = resp[k] / total;
          new_gamma[k] += bag[i].count * stored[k];
        }
      }
      double change = 0.0;
      for (std::size_t k = 0; k < K_; ++k) {
        new_gamma[k] = alpha + new_gamma[k];
        change += std::abs(new_gamma[k] - gamma[k]);
        gamma[k] = new_gamma[k];
      }
      if (change / static_cast<double>(K_) < config_.doc_convergence_tol) break;
    }

    for (std::size_t i = 0; i < bag.size(); ++i) {
      for (std::size_t k = 0; k < K_; ++k) {
        sstats(k, bag[i].word) += bag[i].count * doc_resp[i][k];
      }
    }
  }

  auto lambda = state_.lambda.data();
  const auto stats = sstats.data();
  for (std::size_t i = 0; i < lambda.size(); ++i) lambda[i] = beta + stats[i];

  const double elbo = compute_elbo(corpus_, state_, config_.hyper);
  state_.elbo_trace.push_back(elbo);
  return elbo;
}

VbOutcome vb_run(const Corpus& corpus, const VbConfig& config) {
  config.validate();
  if (corpus.docs.empty()) throw InputError("vb: corpus has no documents");
  const auto start = std::chrono::steady_clock::now();

  VbInference inference(corpus, config);
  double previous = 0.0;
  for (std::size_t t = 0; t < config.epochs; ++t) {
    const double elbo = inference.epoch();
    if (t > 0 && elbo - previous < config.elbo_rel_tol * std::abs(previous)) break;
    previous = elbo;
  }

  VbOutcome out;
  out.state = inference.state();
  out.fit.algorithm = Algorithm::Vb;
  out.fit.seed = config.seed;
  out.fit.hyper = config.hyper;
  out.fit.iterations = inference.epochs_done();
  out.fit.phi_hat = out.state.lambda;
  out.fit.theta_hat = out.state.gamma;
  normalize_rows(out.fit.phi_hat);
  normalize_rows(out.fit.theta_hat);
  out.fit.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

FitResult vb_fit(const Corpus& corpus, const VbConfig& config) {
  return vb_run(corpus, config).fit;
}

}  // namespace simlda
