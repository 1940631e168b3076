#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "simlda/stats.hpp"
#include "simlda/types.hpp"

namespace simlda {

struct BoxplotOptions {
  std::string title = "Average KLD per corpus";
  std::string x_label = "Documents per corpus (M)";
  std::string y_label = "Average KLD (nats)";
  /// Group boxes by GroupSummary::K instead of GroupSummary::M.
  bool group_by_topics = false;
};

/// Self-contained SVG box plot: one slot per group value on the x-axis,
/// side-by-side boxes per algorithm. Each box is a <rect class="box">.
std::string render_boxplot(std::span<const GroupSummary> summaries,
                           const BoxplotOptions& options = {});
void emit_boxplot(std::span<const GroupSummary> summaries, const std::filesystem::path& path,
                  const BoxplotOptions& options = {});

/// Ground-truth topics (class "truth", one fixed color) overlaid with the
/// extracted topic aligned to each of them (class "fit"). The title
/// carries the average KLD to two decimals.
std::string render_wordtopic_plot(const Matrix& truth_phi, const Matrix& fit_phi,
                                  std::span<const std::size_t> alignment, double average_kld);
void emit_wordtopic_plot(const Matrix& truth_phi, const Matrix& fit_phi,
                         std::span<const std::size_t> alignment, double average_kld,
                         const std::filesystem::path& path);

}  // namespace simlda
