#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace simlda {

/// Tukey box-plot statistics. Quartiles use linear interpolation between
/// order statistics (Hyndman & Fan type 7).
struct BoxStats {
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;  // ascending
};

/// Type-7 quantile of already sorted data, prob in [0, 1].
double quantile_sorted(std::span<const double> sorted, double prob);

/// Throws InputError for an empty list.
BoxStats boxplot_stats(std::span<const double> values);

/// Box-plot summary of one (group, algorithm) cell.
struct GroupSummary {
  std::size_t M = 0;
  std::string algorithm;
  /// Topic count of the fits; only meaningful in coherence sweeps (0 otherwise).
  std::size_t K = 0;
  std::vector<double> values;  // in corpus-index order
  double median = 0.0;
  double q1 = 0.0;
  double q3 = 0.0;
  double whisker_low = 0.0;
  double whisker_high = 0.0;
  std::vector<double> outliers;
};

GroupSummary summarize_group(std::size_t M, std::string algorithm, std::vector<double> values,
                             std::size_t K = 0);

}  // namespace simlda
