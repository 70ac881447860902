#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <sstream>

namespace optcv::cli {

std::string histogram_svg(const std::vector<HistogramSeries>& series, const std::string& title) {
  constexpr double kWidth = 720.0;
  constexpr double kHeight = 420.0;
  constexpr double kLeft = 60.0;
  constexpr double kRight = 20.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 50.0;

  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  for (const auto& s : series) {
    for (double v : s.values) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  }
  if (!std::isfinite(lo) || !std::isfinite(hi)) {
    lo = 0.0;
    hi = 1.0;
  }
  if (hi <= lo) hi = lo + 1.0;
  const double bin_width = (hi - lo) / kHistogramBins;

  std::vector<std::vector<double>> density(series.size(), std::vector<double>(kHistogramBins, 0.0));
  double peak = 0.0;
  for (std::size_t s = 0; s < series.size(); ++s) {
    for (double v : series[s].values) {
      auto bin = static_cast<int>((v - lo) / bin_width);
      bin = std::clamp(bin, 0, kHistogramBins - 1);
      density[s][static_cast<std::size_t>(bin)] += 1.0;
    }
    const double total = static_cast<double>(series[s].values.size()) * bin_width;
    for (double& d : density[s]) {
      if (total > 0.0) d /= total;
      peak = std::max(peak, d);
    }
  }
  if (peak <= 0.0) peak = 1.0;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double v) { return kLeft + (v - lo) / (hi - lo) * plot_w; };
  auto py = [&](double d) { return kTop + plot_h - d / peak * plot_h; };

  std::ostringstream svg;
  svg << std::fixed << std::setprecision(2);
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" "
      << "font-size=\"15\">" << title << "</text>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop + plot_h << "\" x2=\"" << kLeft + plot_w
      << "\" y2=\"" << kTop + plot_h << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kTop + plot_h << "\" stroke=\"black\"/>\n";
  for (int tick = 0; tick <= 5; ++tick) {
    const double v = lo + (hi - lo) * tick / 5.0;
    svg << "<text x=\"" << px(v) << "\" y=\"" << kTop + plot_h + 18
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << std::setprecision(3) << v << std::setprecision(2) << "</text>\n";
  }
  svg << "<text x=\"" << kLeft + plot_w / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">mean squared error</text>\n";

  for (std::size_t s = 0; s < series.size(); ++s) {
    svg << "<polyline fill=\"none\" stroke=\"" << series[s].color << "\" stroke-width=\"1.5\" points=\"";
    svg << px(lo) << ',' << py(0.0);
    for (int b = 0; b < kHistogramBins; ++b) {
      const double d = density[s][static_cast<std::size_t>(b)];
      svg << ' ' << px(lo + b * bin_width) << ',' << py(d) << ' ' << px(lo + (b + 1) * bin_width)
          << ',' << py(d);
    }
    svg << ' ' << px(hi) << ',' << py(0.0) << "\"/>\n";
    const double ly = kTop + 16.0 * static_cast<double>(s);
    svg << "<rect x=\"" << kLeft + plot_w - 150 << "\" y=\"" << ly << "\" width=\"12\" height=\"3\" fill=\""
        << series[s].color << "\"/>\n";
    svg << "<text x=\"" << kLeft + plot_w - 132 << "\" y=\"" << ly + 5
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << series[s].label << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace optcv::cli
