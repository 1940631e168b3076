#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "simlda/types.hpp"

namespace simlda {

/// Forward Kullback-Leibler divergence sum_i p_i ln(p_i / q_i), in nats,
/// with 0 ln(0/q) = 0. Throws DivergenceError if q_i = 0 where p_i > 0 and
/// InputError on a length mismatch. Round-off negatives are clamped to 0.
double kld(std::span<const double> p, std::span<const double> q);

/// (q + epsilon) renormalized. Throws InputError for an all-zero or
/// negative q.
std::vector<double> smooth_distribution(std::span<const double> q, double epsilon);

struct EvalReport {
  /// alignment[t] is the extracted topic chosen for ground-truth topic t.
  std::vector<std::size_t> alignment;
  std::vector<double> per_topic_kld;
  double average_kld = 0.0;
};

/// Matches each ground-truth topic to the extracted topic of least
/// kld(truth, smooth(extracted)); ties go to the lowest extracted index.
/// An extracted topic may be chosen by several ground-truth topics.
EvalReport align_topics(const Matrix& truth_phi, const Matrix& fit_phi,
                        double epsilon = 1e-12);

}  // namespace simlda
