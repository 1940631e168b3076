#pragma once

// Independent reference implementations used to cross-check the library.
// Nothing here calls into simlda numerics.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

/// Forward KL divergence in nats, written out term by term.
inline double kld(const std::vector<double>& p, const std::vector<double>& q) {
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] > 0.0) total += p[i] * (std::log(p[i]) - std::log(q[i]));
  }
  return total < 0.0 ? 0.0 : total;
}

inline std::vector<double> smooth(const std::vector<double>& q, double eps) {
  std::vector<double> out(q.size());
  double s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    out[i] = q[i] + eps;
    s += out[i];
  }
  for (double& x : out) x /= s;
  return out;
}

struct Alignment {
  std::vector<std::size_t> match;
  std::vector<double> per_topic;
  double average = 0.0;
};

/// All-pairs table, then a per-row arg-min with first-index tie-break.
inline Alignment align(const std::vector<std::vector<double>>& truth,
                       const std::vector<std::vector<double>>& fit, double eps) {
  std::vector<std::vector<double>> table(truth.size(), std::vector<double>(fit.size()));
  for (std::size_t i = 0; i < truth.size(); ++i) {
    for (std::size_t j = 0; j < fit.size(); ++j) table[i][j] = kld(truth[i], smooth(fit[j], eps));
  }
  Alignment a;
  for (const auto& row : table) {
    std::size_t best = 0;
    for (std::size_t j = 1; j < row.size(); ++j) {
      if (row[j] < row[best]) best = j;
    }
    a.match.push_back(best);
    a.per_topic.push_back(row[best]);
    a.average += row[best];
  }
  if (!truth.empty()) a.average /= static_cast<double>(truth.size());
  return a;
}

/// Type-7 quantile straight from the definition: h = (n-1)p, interpolate
/// between the floor(h)-th and ceil(h)-th order statistics.
inline double quantile(std::vector<double> values, double p) {
  std::sort(values.begin(), values.end());
  const double h = (static_cast<double>(values.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const auto hi = static_cast<std::size_t>(std::ceil(h));
  return values[lo] + (h - std::floor(h)) * (values[hi] - values[lo]);
}

/// Digamma by upward recurrence and the asymptotic series.
inline double digamma(double x) {
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  const double series =
      inv2 * (1.0 / 12 - inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132)))));
  return shift + std::log(x) - 0.5 * inv - series;
}

/// E_q[log p(beta_k | eta)] - E_q[log q(beta_k)] for one Dirichlet row.
inline double dirichlet_kl_term(const std::vector<double>& lambda, double prior) {
  double sum = 0.0;
  for (double l : lambda) sum += l;
  const double dsum = digamma(sum);
  double prior_part = std::lgamma(prior * static_cast<double>(lambda.size())) -
                      static_cast<double>(lambda.size()) * std::lgamma(prior);
  double q_part = std::lgamma(sum);
  for (double l : lambda) {
    const double elog = digamma(l) - dsum;
    prior_part += (prior - 1.0) * elog;
    q_part += (l - 1.0) * elog - std::lgamma(l);
  }
  return prior_part - q_part;
}

/// Evidence lower bound of a one-topic model. With K = 1 every responsibility
/// is 1 and E[log theta] = 0, so the bound reduces to the token log-likelihood
/// plus the topic-row Dirichlet term; the document terms cancel exactly.
inline double elbo_one_topic(const std::vector<std::vector<unsigned>>& docs,
                             const std::vector<double>& lambda, double beta) {
  double sum = 0.0;
  for (double l : lambda) sum += l;
  double total = 0.0;
  for (const auto& doc : docs) {
    for (unsigned w : doc) total += digamma(lambda[w]) - digamma(sum);
  }
  return total + dirichlet_kl_term(lambda, beta);
}

}  // namespace oracle
