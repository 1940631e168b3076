#include "simlda/stats.hpp"

#include <algorithm>
#include <cmath>

#include "simlda/errors.hpp"

namespace simlda {

double quantile_sorted(std::span<const double> sorted, double prob) {
  if (sorted.empty()) throw InputError("quantile of empty data");
  const double h = static_cast<double>(sorted.size() - 1) * prob;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  if (lo + 1 >= sorted.size()) return sorted.back();
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[lo + 1] - sorted[lo]);
}

BoxStats boxplot_stats(std::span<const double> values) {
  if (values.empty()) throw InputError("boxplot_stats: empty value list");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());

  BoxStats s;
  s.median = quantile_sorted(sorted, 0.5);
  s.q1 = quantile_sorted(sorted, 0.25);
  s.q3 = quantile_sorted(sorted, 0.75);
  const double iqr = s.q3 - s.q1;
  const double low_fence = s.q1 - 1.5 * iqr;
  const double high_fence = s.q3 + 1.5 * iqr;

  s.whisker_low = s.q1;
  s.whisker_high = s.q3;
  bool seen = false;
  for (double x : sorted) {
    if (x < low_fence || x > high_fence) {
      s.outliers.push_back(x);
      continue;
    }
    if (!seen) {
      s.whisker_low = x;
      seen = true;
    }
    s.whisker_high = x;
  }
  return s;
}

GroupSummary summarize_group(std::size_t M, std::string algorithm, std::vector<double> values,
                             std::size_t K) {
  const BoxStats s = boxplot_stats(values);
  GroupSummary g;
  g.M = M;
  g.algorithm = std::move(algorithm);
  g.K = K;
  g.values = std::move(values);
  g.median = s.median;
  g.q1 = s.q1;
  g.q3 = s.q3;
  g.whisker_low = s.whisker_low;
  g.whisker_high = s.whisker_high;
  g.outliers = s.outliers;
  return g;
}

}  // namespace simlda
