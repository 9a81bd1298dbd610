#include <sstream>
#include <string>

#include "aldm/harness.hpp"
#include "text_format.hpp"

namespace aldm {

namespace {

constexpr double kLatMin = -15.0;
constexpr double kLatMax = 11.0;
constexpr double kLonMin = 0.0;
constexpr double kLonMax = 200.0;
constexpr double kLeft = 60.0;
constexpr double kTop = 40.0;
constexpr double kPlotW = 468.0;
constexpr double kPlotH = 720.0;
constexpr double kWidth = kLeft + kPlotW + 24.0;
constexpr double kHeight = kTop + kPlotH + 56.0;

using detail::fixed;

std::string px(double v) { return fixed(v, 2); }

// Lateral axis is drawn right-positive, i.e. the sensor's -y.
double sx(const PointXY& p) { return kLeft + (-p.y - kLatMin) / (kLatMax - kLatMin) * kPlotW; }
double sy(const PointXY& p) { return kTop + kPlotH - (p.x - kLonMin) / (kLonMax - kLonMin) * kPlotH; }

const char* role_color(LineRole role) {
  switch (role) {
    case LineRole::EgoLeft:
      return "#ff7f0e";
    case LineRole::EgoRight:
      return "#e6b800";
    case LineRole::AdjacentLeft:
      return "#9467bd";
    case LineRole::AdjacentRight:
      return "#8c564b";
  }
  return "#000000";
}

void polyline(std::ostringstream& out, const std::vector<PointXY>& pts, const char* color, double width,
              const char* extra = "") {
  if (pts.size() < 2) return;
  out << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"" << px(width) << "\"" << extra
      << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) out << (i ? " " : "") << px(sx(pts[i])) << ',' << px(sy(pts[i]));
  out << "\"/>\n";
}

template <class F>
std::vector<PointXY> sample_curve(F f, double x0, double x1) {
  std::vector<PointXY> pts;
  const int n = 100;
  for (int i = 0; i <= n; ++i) {
    const double x = x0 + (x1 - x0) * i / n;
    pts.push_back({x, f(x), 0.0});
  }
  return pts;
}

}  // namespace

std::string render_frame_svg(const FrameResult& frame) {
  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << px(kWidth) << "\" height=\"" << px(kHeight)
      << "\" viewBox=\"0 0 " << px(kWidth) << ' ' << px(kHeight) << "\" font-family=\"sans-serif\" font-size=\"11\">\n"
      << "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n"
      << "<defs><clipPath id=\"plot\"><rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\""
      << px(kPlotW) << "\" height=\"" << px(kPlotH) << "\"/></clipPath></defs>\n"
      << "<text x=\"" << px(kLeft) << "\" y=\"22\" font-size=\"13\">frame " << frame.report.index
      << " station " << fixed(frame.report.ego.station, 2) << " m</text>\n";

  // grid and ticks
  for (int lat = -15; lat <= 10; lat += 5) {
    const double x = kLeft + (lat - kLatMin) / (kLatMax - kLatMin) * kPlotW;
    out << "<line x1=\"" << px(x) << "\" y1=\"" << px(kTop) << "\" x2=\"" << px(x) << "\" y2=\""
        << px(kTop + kPlotH) << "\" stroke=\"#e0e0e0\"/>\n"
        << "<text x=\"" << px(x) << "\" y=\"" << px(kTop + kPlotH + 16) << "\" text-anchor=\"middle\">" << lat
        << "</text>\n";
  }
  for (int lon = 0; lon <= 200; lon += 20) {
    const double y = kTop + kPlotH - (lon - kLonMin) / (kLonMax - kLonMin) * kPlotH;
    out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(y) << "\" x2=\"" << px(kLeft + kPlotW) << "\" y2=\""
        << px(y) << "\" stroke=\"#e0e0e0\"/>\n"
        << "<text x=\"" << px(kLeft - 6) << "\" y=\"" << px(y + 4) << "\" text-anchor=\"end\">" << lon
        << "</text>\n";
  }
  out << "<rect x=\"" << px(kLeft) << "\" y=\"" << px(kTop) << "\" width=\"" << px(kPlotW) << "\" height=\""
      << px(kPlotH) << "\" fill=\"none\" stroke=\"#000000\"/>\n"
      << "<text x=\"" << px(kLeft + kPlotW / 2) << "\" y=\"" << px(kTop + kPlotH + 36)
      << "\" text-anchor=\"middle\">lateral distance in m</text>\n"
      << "<text transform=\"translate(18 " << px(kTop + kPlotH / 2)
      << ") rotate(-90)\" text-anchor=\"middle\">longitudinal distance in m</text>\n";

  out << "<g clip-path=\"url(#plot)\">\n";
  for (const auto* list : {&frame.cloud.left, &frame.cloud.right}) {
    for (const LineObject& line : *list) {
      for (const PointXY& p : line.points) {
        const double x = sx(p);
        const double y = sy(p);
        out << "<path d=\"M" << px(x - 2.5) << ' ' << px(y) << "H" << px(x + 2.5) << "M" << px(x) << ' '
            << px(y - 2.5) << "V" << px(y + 2.5) << "\" stroke=\"#1f4eb4\" stroke-width=\"0.8\"/>\n";
      }
    }
  }
  if (frame.report.baseline.enabled) {
    for (const auto* obj : {&frame.baseline.left, &frame.baseline.right}) {
      if (*obj) polyline(out, (*obj)->points, "#d62728", 4.0, " stroke-opacity=\"0.6\"");
    }
  }
  if (frame.lanes) {
    for (const TracedLine* line : frame.lanes->lines()) polyline(out, line->points, role_color(line->role), 1.4);
  }
  for (const TracedLine& line : frame.downsampled) {
    for (const PointXY& p : line.points) {
      out << "<circle cx=\"" << px(sx(p)) << "\" cy=\"" << px(sy(p)) << "\" r=\"3\" fill=\"none\" stroke=\""
          << role_color(line.role) << "\" stroke-width=\"1.2\"/>\n";
    }
  }
  if (frame.aldm_trajectory) {
    const Trajectory& t = *frame.aldm_trajectory;
    polyline(out, sample_curve(t.left, t.x_begin, t.x_end), "#404040", 1.0, " stroke-dasharray=\"4 3\"");
    polyline(out, sample_curve(t.right, t.x_begin, t.x_end), "#404040", 1.0, " stroke-dasharray=\"4 3\"");
    polyline(out, sample_curve([&](double x) { return t.center(x); }, t.x_begin, t.x_end), "#2ca02c", 2.0);
  }
  out << "</g>\n";

  const struct {
    const char* color;
    const char* label;
  } legend[] = {{"#1f4eb4", "sensed points"},      {"#d62728", "baseline selection"},
                {"#ff7f0e", "ALDM ego left"},      {"#e6b800", "ALDM ego right"},
                {"#9467bd", "ALDM adjacent left"}, {"#8c564b", "ALDM adjacent right"},
                {"#404040", "cubic trend lines"},  {"#2ca02c", "trajectory"}};
  double ly = kTop + 14;
  for (const auto& item : legend) {
    out << "<line x1=\"" << px(kLeft + 8) << "\" y1=\"" << px(ly - 4) << "\" x2=\"" << px(kLeft + 24) << "\" y2=\""
        << px(ly - 4) << "\" stroke=\"" << item.color << "\" stroke-width=\"2\"/>\n"
        << "<text x=\"" << px(kLeft + 28) << "\" y=\"" << px(ly) << "\">" << item.label << "</text>\n";
    ly += 14;
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace aldm
