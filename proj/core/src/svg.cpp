#include <algorithm>
#include <sstream>

#include "limitcone/errors.hpp"
#include "limitcone/report_io.hpp"

namespace limitcone {
namespace svg {

namespace {

constexpr int kW = 640;
constexpr int kH = 640;
constexpr int kHistH = 420;
constexpr double kMargin = 48.0;

std::string num(double v) { return format_double(v, 8); }

void header(std::ostringstream& os, int w, int h) {
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << w << " " << h
     << "\" width=\"" << w << "\" height=\"" << h << "\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"" << w << "\" height=\"" << h
     << "\" fill=\"#ffffff\"/>\n";
}

void frame(std::ostringstream& os, double x0, double y0, double x1, double y1) {
  os << "<rect x=\"" << num(x0) << "\" y=\"" << num(y0) << "\" width=\"" << num(x1 - x0)
     << "\" height=\"" << num(y1 - y0)
     << "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
}

}  // namespace

std::string torus_scatter(const TorusCloud& cloud) {
  if (cloud.size() == 0) fail(ErrorCode::EmptyCloud, "empty torus cloud");
  std::ostringstream os;
  header(os, kW, kH);
  const double x0 = kMargin, y0 = kMargin, x1 = kW - kMargin, y1 = kH - kMargin;
  frame(os, x0, y0, x1, y1);
  os << "<text x=\"" << num(x0) << "\" y=\"" << num(y0 - 12)
     << "\" font-family=\"monospace\" font-size=\"13\" fill=\"#333333\">torus cloud ("
     << cloud.size() << " points, statistic " << format_double(cloud.statistic, 6)
     << ")</text>\n";
  for (size_t i = 0; i < cloud.size(); ++i) {
    double px = x0 + cloud.points[i * cloud.r] * (x1 - x0);
    double py = y1 - cloud.points[i * cloud.r + 1] * (y1 - y0);
    os << "<circle cx=\"" << num(px) << "\" cy=\"" << num(py)
       << "\" r=\"1.8\" fill=\"#1f6fb4\" fill-opacity=\"0.65\"/>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string ratio_histogram(const ConeReport& rep) {
  if (rep.r != 2 || rep.ratios.empty())
    fail(ErrorCode::EmptyCloud, "ratio histogram needs r = 2 samples");
  std::ostringstream os;
  header(os, kW, kHistH);
  const double x0 = kMargin, y0 = kMargin, x1 = kW - kMargin, y1 = kHistH - kMargin;
  frame(os, x0, y0, x1, y1);
  const int bins = 64;
  std::vector<long> count(bins, 0);
  double lo = 0.0, hi = std::max(1.0, rep.ratio_max);
  for (double v : rep.ratios) {
    int b = static_cast<int>((v - lo) / (hi - lo) * bins);
    b = std::clamp(b, 0, bins - 1);
    ++count[b];
  }
  long peak = *std::max_element(count.begin(), count.end());
  if (peak < 1) peak = 1;
  const double bw = (x1 - x0) / bins;
  for (int b = 0; b < bins; ++b) {
    if (!count[b]) continue;
    double h = (y1 - y0 - 4) * static_cast<double>(count[b]) / static_cast<double>(peak);
    os << "<rect x=\"" << num(x0 + b * bw) << "\" y=\"" << num(y1 - h) << "\" width=\""
       << num(bw) << "\" height=\"" << num(h) << "\" fill=\"#56a0d3\"/>\n";
  }
  // rug markers (strided for large clouds, deterministic)
  size_t stride = std::max<size_t>(1, rep.ratios.size() / 2000);
  for (size_t i = 0; i < rep.ratios.size(); i += stride) {
    double px = x0 + (rep.ratios[i] - lo) / (hi - lo) * (x1 - x0);
    os << "<line x1=\"" << num(px) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(px)
       << "\" y2=\"" << num(y1 + 8)
       << "\" stroke=\"#d45500\" stroke-width=\"0.6\"/>\n";
  }
  os << "<text x=\"" << num(x0) << "\" y=\"" << num(y0 - 12)
     << "\" font-family=\"monospace\" font-size=\"13\" fill=\"#333333\">ratio l2/l1: "
     << rep.ratios.size() << " samples, min " << format_double(rep.ratio_min, 6)
     << ", max " << format_double(rep.ratio_max, 6) << ", max gap "
     << format_double(rep.max_gap, 6) << "</text>\n";
  os << "<text x=\"" << num(x0) << "\" y=\"" << num(y1 + 24)
     << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#333333\">0</text>\n";
  os << "<text x=\"" << num(x1 - 8) << "\" y=\"" << num(y1 + 24)
     << "\" font-family=\"monospace\" font-size=\"12\" fill=\"#333333\">"
     << format_double(hi, 3) << "</text>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace svg
}  // namespace limitcone
