#include "simlda/eval.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "simlda/errors.hpp"

namespace simlda {

double kld(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw InputError("kld: length mismatch (" + std::to_string(p.size()) + " vs " +
                     std::to_string(q.size()) + ")");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] <= 0.0) continue;
    if (q[i] <= 0.0) {
      throw DivergenceError("kld: q has no mass at index " + std::to_string(i));
    }
    total += p[i] * std::log(p[i] / q[i]);
  }
  return total < 0.0 ? 0.0 : total;
}

std::vector<double> smooth_distribution(std::span<const double> q, double epsilon) {
  if (!(epsilon >= 0.0)) throw InputError("smooth_distribution: epsilon must be >= 0");
  std::vector<double> out(q.size());
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (!(q[i] >= 0.0)) throw InputError("smooth_distribution: negative entry");
    out[i] = q[i] + epsilon;
    total += out[i];
  }
  if (total == 0.0 || q.empty()) throw InputError("smooth_distribution: all-zero vector");
  for (double& x : out) x /= total;
  return out;
}

EvalReport align_topics(const Matrix& truth_phi, const Matrix& fit_phi, double epsilon) {
  if (truth_phi.cols() != fit_phi.cols()) {
    throw InputError("align_topics: vocabulary sizes differ (" +
                     std::to_string(truth_phi.cols()) + " vs " + std::to_string(fit_phi.cols()) +
                     ")");
  }
  if (fit_phi.rows() == 0 || truth_phi.rows() == 0) {
    throw InputError("align_topics: empty topic matrix");
  }

  std::vector<std::vector<double>> smoothed;
  smoothed.reserve(fit_phi.rows());
  for (std::size_t e = 0; e < fit_phi.rows(); ++e) {
    smoothed.push_back(smooth_distribution(fit_phi.row(e), epsilon));
  }

  EvalReport report;
  report.alignment.resize(truth_phi.rows());
  report.per_topic_kld.resize(truth_phi.rows());
  double total = 0.0;
  for (std::size_t t = 0; t < truth_phi.rows(); ++t) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_index = 0;
    for (std::size_t e = 0; e < smoothed.size(); ++e) {
      const double d = kld(truth_phi.row(t), smoothed[e]);
      if (d < best) {
        best = d;
        best_index = e;
      }
    }
    report.alignment[t] = best_index;
    report.per_topic_kld[t] = best;
    total += best;
  }
  report.average_kld = total / static_cast<double>(truth_phi.rows());
  return report;
}

}  // namespace simlda
