#include "briefaudit/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <regex>
#include <sstream>

namespace briefaudit {

namespace {

constexpr std::array<double, 4> kGridLevels = {0.25, 0.5, 0.75, 1.0};

std::string coord(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string xml_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
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

std::string points(const std::array<double, kElementCount>& values) {
  std::string out;
  for (Element e : kAllElements) {
    auto p = radar_vertex(e, values[index_of(e)]);
    if (!out.empty()) out += ' ';
    out += coord(p.x) + "," + coord(p.y);
  }
  return out;
}

}  // namespace

RadarPoint radar_vertex(Element e, double value) {
  const double v = std::clamp(value, 0.0, 1.0);
  const double angle = (-90.0 + 45.0 * (to_int(e) - 1)) * std::numbers::pi / 180.0;
  return {kRadarCenter + kRadarRadius * v * std::cos(angle), kRadarCenter + kRadarRadius * v * std::sin(angle)};
}

std::string emit_radar_svg(const std::array<double, kElementCount>& values, RadarMode mode,
                           std::string_view title) {
  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"500\" height=\"500\" "
         "viewBox=\"0 0 500 500\">\n";
  const std::string_view what = mode == RadarMode::Vulnerability ? "vulnerability" : "resilience";
  svg << "  <title>" << xml_escape(title.empty() ? std::string("Assessment ") + std::string(what) : std::string(title))
      << "</title>\n";
  svg << "  <rect x=\"0\" y=\"0\" width=\"500\" height=\"500\" fill=\"white\"/>\n";
  for (double level : kGridLevels) {
    std::array<double, kElementCount> ring;
    ring.fill(level);
    svg << "  <polygon class=\"grid\" points=\"" << points(ring)
        << "\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  }
  for (Element e : kAllElements) {
    auto end = radar_vertex(e, 1.0);
    svg << "  <line class=\"axis\" x1=\"" << coord(kRadarCenter) << "\" y1=\"" << coord(kRadarCenter)
        << "\" x2=\"" << coord(end.x) << "\" y2=\"" << coord(end.y) << "\" stroke=\"#999999\" stroke-width=\"1\"/>\n";
  }
  const char* fill = mode == RadarMode::Vulnerability ? "#d9534f" : "#5cb85c";
  svg << "  <polygon id=\"data\" points=\"" << points(values) << "\" fill=\"" << fill
      << "\" fill-opacity=\"0.35\" stroke=\"" << fill << "\" stroke-width=\"2\"/>\n";
  for (Element e : kAllElements) {
    // Labels sit just outside the outer ring.
    auto p = radar_vertex(e, 1.0);
    p = {kRadarCenter + (p.x - kRadarCenter) * 1.09, kRadarCenter + (p.y - kRadarCenter) * 1.09};
    svg << "  <text x=\"" << coord(p.x) << "\" y=\"" << coord(p.y) << "\" text-anchor=\"middle"
        << "\" dominant-baseline=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << xml_escape(element_info(e).short_name) << "</text>\n";
  }
  svg << "</svg>\n";
  return svg.str();
}

std::string emit_radar_svg(const StaticProfile& profile, RadarMode mode) {
  std::array<double, kElementCount> values{};
  for (const auto& score : profile.elements) {
    values[index_of(score.element)] = mode == RadarMode::Vulnerability ? score.vulnerability : score.resilience;
  }
  return emit_radar_svg(values, mode, profile.brief_id);
}

std::vector<RadarPoint> parse_radar_polygon(std::string_view svg) {
  static const std::regex data_re(R"re(<polygon id="data" points="([^"]*)")re");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_search(svg.begin(), svg.end(), m, data_re)) return {};
  std::vector<RadarPoint> out;
  std::istringstream in(m[1].str());
  std::string pair;
  while (in >> pair) {
    auto comma = pair.find(',');
    if (comma == std::string::npos) continue;
    out.push_back({std::stod(pair.substr(0, comma)), std::stod(pair.substr(comma + 1))});
  }
  return out;
}

}  // namespace briefaudit
