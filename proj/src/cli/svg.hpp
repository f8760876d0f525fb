#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace hawkesnet::cli {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool markers = false;
};

struct ChartLabels {
  std::string title;
  std::string x_label;
  std::string y_label;
};

void write_line_chart(const std::filesystem::path& path, const std::vector<Series>& series,
                      const ChartLabels& labels);

// Grouped bars: one group per category, one bar per series (series[k].y[category]).
void write_bar_chart(const std::filesystem::path& path, const std::vector<std::string>& categories,
                     const std::vector<Series>& series, const ChartLabels& labels);

}  // namespace hawkesnet::cli
