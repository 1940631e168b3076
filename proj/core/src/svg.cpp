#include "simlda/svg.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <map>
#include <set>

#include "simlda/errors.hpp"
#include "simlda/io.hpp"

namespace simlda {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 130.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;

constexpr std::array<const char*, 10> kPalette = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                                                  "#9467bd", "#8c564b", "#e377c2", "#7f7f7f",
                                                  "#bcbd22", "#17becf"};
constexpr const char* kTruthColor = "#000000";

std::string num(double x) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.2f", x);
  return buf.data();
}

std::string label(double x) {
  std::array<char, 32> buf{};
  std::snprintf(buf.data(), buf.size(), "%.3g", x);
  return buf.data();
}

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct YScale {
  double lo;
  double hi;
  double operator()(double y) const {
    const double span = hi - lo;
    return kTop + (kHeight - kTop - kBottom) * (1.0 - (y - lo) / span);
  }
};

YScale make_scale(double lo, double hi) {
  if (!(hi > lo)) {
    const double pad = std::max(std::abs(lo) * 0.1, 0.05);
    return {lo - pad, hi + pad};
  }
  const double pad = (hi - lo) * 0.05;
  return {lo - pad, hi + pad};
}

void header(std::string& out, const std::string& title) {
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" viewBox=\"0 0 " + num(kWidth) + " " + num(kHeight) + "\">\n";
  out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + num(kWidth) + "\" height=\"" +
         num(kHeight) + "\" fill=\"#ffffff\"/>\n";
  out += "<text class=\"title\" x=\"" + num((kLeft + kWidth - kRight) / 2) + "\" y=\"" +
         num(kTop / 2 + 5) + "\" text-anchor=\"middle\" font-size=\"16\">" + escape(title) +
         "</text>\n";
}

void axes(std::string& out, const YScale& y, const std::string& x_label,
          const std::string& y_label) {
  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kHeight - kBottom;
  out += "<line class=\"axis\" x1=\"" + num(x0) + "\" y1=\"" + num(y0) + "\" x2=\"" + num(x1) +
         "\" y2=\"" + num(y0) + "\" stroke=\"#000\"/>\n";
  out += "<line class=\"axis\" x1=\"" + num(x0) + "\" y1=\"" + num(kTop) + "\" x2=\"" + num(x0) +
         "\" y2=\"" + num(y0) + "\" stroke=\"#000\"/>\n";
  for (int i = 0; i <= 5; ++i) {
    const double value = y.lo + (y.hi - y.lo) * i / 5.0;
    const double py = y(value);
    out += "<line class=\"tick\" x1=\"" + num(x0 - 5) + "\" y1=\"" + num(py) + "\" x2=\"" +
           num(x0) + "\" y2=\"" + num(py) + "\" stroke=\"#000\"/>\n";
    out += "<text class=\"tick-label\" x=\"" + num(x0 - 8) + "\" y=\"" + num(py + 4) +
           "\" text-anchor=\"end\" font-size=\"11\">" + label(value) + "</text>\n";
  }
  out += "<text class=\"axis-label\" x=\"" + num((x0 + x1) / 2) + "\" y=\"" +
         num(kHeight - 15) + "\" text-anchor=\"middle\" font-size=\"13\">" + escape(x_label) +
         "</text>\n";
  out += "<text class=\"axis-label\" x=\"18\" y=\"" + num((kTop + y0) / 2) +
         "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 18 " +
         num((kTop + y0) / 2) + ")\">" + escape(y_label) + "</text>\n";
}

void legend(std::string& out, const std::vector<std::pair<std::string, std::string>>& entries) {
  double y = kTop + 10;
  const double x = kWidth - kRight + 15;
  for (const auto& [name, color] : entries) {
    out += "<rect class=\"legend-swatch\" x=\"" + num(x) + "\" y=\"" + num(y - 9) +
           "\" width=\"12\" height=\"12\" fill=\"" + color + "\"/>\n";
    out += "<text class=\"legend-label\" x=\"" + num(x + 18) + "\" y=\"" + num(y + 1) +
           "\" font-size=\"12\">" + escape(name) + "</text>\n";
    y += 20;
  }
}

}  // namespace

std::string render_boxplot(std::span<const GroupSummary> summaries,
                           const BoxplotOptions& options) {
  if (summaries.empty()) throw InputError("render_boxplot: no summaries");

  std::set<std::size_t> groups;
  std::set<std::string> algorithms;
  double lo = summaries.front().whisker_low;
  double hi = summaries.front().whisker_high;
  for (const auto& s : summaries) {
    groups.insert(options.group_by_topics ? s.K : s.M);
    algorithms.insert(s.algorithm);
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    lo = std::min(lo, s.whisker_low);
    hi = std::max(hi, s.whisker_high);
  }
  const YScale y = make_scale(lo, hi);

  std::map<std::string, std::string> colors;
  std::vector<std::pair<std::string, std::string>> legend_entries;
  std::size_t next = 0;
  for (const auto& a : algorithms) {
    colors[a] = kPalette[next++ % kPalette.size()];
    legend_entries.emplace_back(a, colors[a]);
  }

  std::string out;
  header(out, options.title);
  axes(out, y, options.x_label, options.y_label);

  const double plot_width = kWidth - kLeft - kRight;
  const double slot = plot_width / static_cast<double>(groups.size());
  const double box_width = std::min(40.0, slot * 0.8 / static_cast<double>(algorithms.size()));

  std::size_t gi = 0;
  for (std::size_t g : groups) {
    const double slot_center = kLeft + slot * (static_cast<double>(gi) + 0.5);
    out += "<text class=\"group-label\" x=\"" + num(slot_center) + "\" y=\"" +
           num(kHeight - kBottom + 18) + "\" text-anchor=\"middle\" font-size=\"11\">" +
           std::to_string(g) + "</text>\n";
    std::size_t ai = 0;
    for (const auto& a : algorithms) {
      const auto it = std::find_if(summaries.begin(), summaries.end(), [&](const GroupSummary& s) {
        return (options.group_by_topics ? s.K : s.M) == g && s.algorithm == a;
      });
      const double offset =
          (static_cast<double>(ai) - (static_cast<double>(algorithms.size()) - 1.0) / 2.0) *
          (box_width + 4.0);
      ++ai;
      if (it == summaries.end()) continue;
      const GroupSummary& s = *it;
      const double cx = slot_center + offset;
      const double left = cx - box_width / 2;
      const std::string& color = colors[a];

      out += "<line class=\"whisker\" x1=\"" + num(cx) + "\" y1=\"" + num(y(s.whisker_low)) +
             "\" x2=\"" + num(cx) + "\" y2=\"" + num(y(s.whisker_high)) +
             "\" stroke=\"#000\"/>\n";
      for (double w : {s.whisker_low, s.whisker_high}) {
        out += "<line class=\"whisker-cap\" x1=\"" + num(cx - box_width / 4) + "\" y1=\"" +
               num(y(w)) + "\" x2=\"" + num(cx + box_width / 4) + "\" y2=\"" + num(y(w)) +
               "\" stroke=\"#000\"/>\n";
      }
      const double top = y(s.q3);
      const double height = std::max(y(s.q1) - top, 0.5);
      out += "<rect class=\"box\" x=\"" + num(left) + "\" y=\"" + num(top) + "\" width=\"" +
             num(box_width) + "\" height=\"" + num(height) + "\" fill=\"" + color +
             "\" fill-opacity=\"0.6\" stroke=\"#000\"/>\n";
      out += "<line class=\"median\" x1=\"" + num(left) + "\" y1=\"" + num(y(s.median)) +
             "\" x2=\"" + num(left + box_width) + "\" y2=\"" + num(y(s.median)) +
             "\" stroke=\"#000\" stroke-width=\"2\"/>\n";
      for (double o : s.outliers) {
        out += "<circle class=\"outlier\" cx=\"" + num(cx) + "\" cy=\"" + num(y(o)) +
               "\" r=\"3\" fill=\"none\" stroke=\"" + color + "\"/>\n";
      }
    }
    ++gi;
  }
  legend(out, legend_entries);
  out += "</svg>\n";
  return out;
}

void emit_boxplot(std::span<const GroupSummary> summaries, const std::filesystem::path& path,
                  const BoxplotOptions& options) {
  write_file(path, render_boxplot(summaries, options));
}

std::string render_wordtopic_plot(const Matrix& truth_phi, const Matrix& fit_phi,
                                  std::span<const std::size_t> alignment, double average_kld) {
  if (truth_phi.cols() != fit_phi.cols()) throw InputError("wordtopic plot: vocabulary mismatch");
  if (alignment.size() != truth_phi.rows()) throw InputError("wordtopic plot: alignment size");
  for (std::size_t e : alignment) {
    if (e >= fit_phi.rows()) throw InputError("wordtopic plot: alignment index out of range");
  }
  const std::size_t V = truth_phi.cols();

  double hi = 0.0;
  for (double x : truth_phi.data()) hi = std::max(hi, x);
  for (std::size_t e : alignment) {
    for (double x : fit_phi.row(e)) hi = std::max(hi, x);
  }
  const YScale y = make_scale(0.0, hi);
  const double plot_width = kWidth - kLeft - kRight;
  auto px = [&](std::size_t v) {
    return kLeft + (V <= 1 ? 0.0 : plot_width * static_cast<double>(v) / static_cast<double>(V - 1));
  };

  std::array<char, 64> title{};
  std::snprintf(title.data(), title.size(), "KLD = %.2f", average_kld);

  std::string out;
  header(out, title.data());
  axes(out, y, "Vocabulary index", "Probability");

  auto polyline = [&](std::span<const double> row, const char* cls, const std::string& color,
                      const char* dash) {
    out += std::string("<polyline class=\"") + cls + "\" fill=\"none\" stroke=\"" + color +
           "\" stroke-width=\"1.5\"";
    if (dash != nullptr) out += std::string(" stroke-dasharray=\"") + dash + "\"";
    out += " points=\"";
    for (std::size_t v = 0; v < V; ++v) {
      if (v > 0) out += ' ';
      out += num(px(v)) + "," + num(y(row[v]));
    }
    out += "\"/>\n";
  };

  std::vector<std::pair<std::string, std::string>> legend_entries;
  legend_entries.emplace_back("true topics", kTruthColor);
  for (std::size_t t = 0; t < truth_phi.rows(); ++t) polyline(truth_phi.row(t), "truth", kTruthColor, nullptr);
  for (std::size_t t = 0; t < alignment.size(); ++t) {
    const std::string color = kPalette[t % kPalette.size()];
    polyline(fit_phi.row(alignment[t]), "fit", color, "4 2");
    legend_entries.emplace_back("topic " + std::to_string(t) + " <- " +
                                    std::to_string(alignment[t]),
                                color);
  }
  legend(out, legend_entries);
  out += "</svg>\n";
  return out;
}

void emit_wordtopic_plot(const Matrix& truth_phi, const Matrix& fit_phi,
                         std::span<const std::size_t> alignment, double average_kld,
                         const std::filesystem::path& path) {
  write_file(path, render_wordtopic_plot(truth_phi, fit_phi, alignment, average_kld));
}

}  // namespace simlda
