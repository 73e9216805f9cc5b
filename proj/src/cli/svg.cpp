#include "qrank/cli/svg.hpp"

#include <cstdio>
#include <sstream>

namespace qrank::cli {

namespace {

constexpr double kWidth = 480.0;
constexpr double kHeight = 480.0;
constexpr double kMargin = 56.0;
constexpr double kPlot = kWidth - 2 * kMargin;

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

double px(double size) { return kMargin + size * kPlot; }
double py(double power) { return kHeight - kMargin - power * kPlot; }

std::string polyline(const std::vector<OperatingPoint>& pts, const char* colour, const char* extra) {
  std::ostringstream s;
  s << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\"" << extra << " points=\"";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    s << (i ? " " : "") << fmt2(px(pts[i].size)) << ',' << fmt2(py(pts[i].power));
  }
  s << "\"/>\n";
  return s.str();
}

}  // namespace

std::string render_roc_svg(const DetectorParams& params, const std::vector<RocRow>& rows) {
  std::vector<OperatingPoint> quantum;
  quantum.reserve(rows.size());
  for (const auto& r : rows) quantum.push_back({r.size, r.power_quantum});
  const RocCurve envelope = classical_roc(params);

  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  s << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

  // axes and ticks
  s << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kPlot << "\" height=\"" << kPlot
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int i = 0; i <= 4; ++i) {
    const double t = i / 4.0;
    s << "<line x1=\"" << fmt2(px(t)) << "\" y1=\"" << fmt2(py(0)) << "\" x2=\"" << fmt2(px(t)) << "\" y2=\""
      << fmt2(py(0) + 5) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt2(px(t)) << "\" y=\"" << fmt2(py(0) + 18) << "\" text-anchor=\"middle\">" << fmt2(t)
      << "</text>\n";
    s << "<line x1=\"" << fmt2(px(0) - 5) << "\" y1=\"" << fmt2(py(t)) << "\" x2=\"" << fmt2(px(0)) << "\" y2=\""
      << fmt2(py(t)) << "\" stroke=\"black\"/>\n";
    s << "<text x=\"" << fmt2(px(0) - 8) << "\" y=\"" << fmt2(py(t) + 4) << "\" text-anchor=\"end\">" << fmt2(t)
      << "</text>\n";
  }
  s << "<text x=\"" << fmt2(px(0.5)) << "\" y=\"" << fmt2(kHeight - 14) << "\" text-anchor=\"middle\">"
    << "size (false-alarm probability)</text>\n";
  s << "<text x=\"16\" y=\"" << fmt2(py(0.5)) << "\" text-anchor=\"middle\" transform=\"rotate(-90 16 "
    << fmt2(py(0.5)) << ")\">power (detection probability)</text>\n";
  s << "<text x=\"" << fmt2(px(0.5)) << "\" y=\"" << fmt2(kMargin - 18) << "\" text-anchor=\"middle\">p0="
    << fmt2(params.p0) << "  p1=" << fmt2(params.p1) << "</text>\n";

  s << polyline({{0.0, 0.0}, {1.0, 1.0}}, "#999999", " stroke-dasharray=\"4 4\"");
  s << polyline(envelope.points(), "#1f77b4", "");
  s << polyline(quantum, "#d62728", "");

  // legend
  const double lx = px(0.55);
  const double ly = py(0.22);
  const struct {
    const char* colour;
    const char* label;
    const char* dash;
  } items[] = {{"#d62728", "quantum (pure densities)", ""},
               {"#1f77b4", "classical envelope", ""},
               {"#999999", "chance", " stroke-dasharray=\"4 4\""}};
  for (int i = 0; i < 3; ++i) {
    const double y = ly + 18.0 * i;
    s << "<line x1=\"" << fmt2(lx) << "\" y1=\"" << fmt2(y) << "\" x2=\"" << fmt2(lx + 24) << "\" y2=\"" << fmt2(y)
      << "\" stroke=\"" << items[i].colour << "\" stroke-width=\"2\"" << items[i].dash << "/>\n";
    s << "<text x=\"" << fmt2(lx + 30) << "\" y=\"" << fmt2(y + 4) << "\">" << items[i].label << "</text>\n";
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace qrank::cli
