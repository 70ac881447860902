#pragma once

#include <span>
#include <string>
#include <vector>

namespace optcv::cli {

struct HistogramSeries {
  std::string label;
  std::string color;
  std::span<const double> values;
};

/// Number of bins in every histogram.
inline constexpr int kHistogramBins = 60;

/// Overlaid step histograms on a shared range, as a standalone SVG document.
std::string histogram_svg(const std::vector<HistogramSeries>& series, const std::string& title);

}  // namespace optcv::cli
