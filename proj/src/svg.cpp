#include "bugnav/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace bugnav {

namespace {

constexpr double kScale = 40.0;  // px per meter
constexpr double kMargin = 10.0;

// Fixed two-decimal output keeps files byte-stable across platforms.
std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  std::string s(buf);
  if (s == "-0.00") s = "0.00";
  return s;
}

std::string escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

std::string header(double w, double h) {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(w) + "\" height=\"" + num(h) +
         "\" viewBox=\"0 0 " + num(w) + " " + num(h) + "\">\n<rect x=\"0\" y=\"0\" width=\"" + num(w) +
         "\" height=\"" + num(h) + "\" fill=\"white\"/>\n";
}

double px(double meters) { return kMargin + meters * kScale; }

}  // namespace

std::string environment_svg(const Environment& env, const std::vector<TraceRow>& trace) {
  const GridMap& g = env.grid;
  const double cs = g.cell_size();
  const double w = 2 * kMargin + g.width() * cs * kScale;
  const double h = 2 * kMargin + g.height() * cs * kScale;
  std::string out = header(w, h);

  out += "<g fill=\"#404040\">\n";
  for (int y = 0; y < g.height(); ++y) {
    // One rectangle per horizontal run of wall cells.
    int run = -1;
    for (int x = 0; x <= g.width(); ++x) {
      const bool wall = x < g.width() && g.is_wall({x, y});
      if (wall && run < 0) run = x;
      if (!wall && run >= 0) {
        out += "<rect x=\"" + num(px(run * cs)) + "\" y=\"" + num(px(y * cs)) + "\" width=\"" +
               num((x - run) * cs * kScale) + "\" height=\"" + num(cs * kScale) + "\"/>\n";
        run = -1;
      }
    }
  }
  out += "</g>\n";

  if (!trace.empty()) {
    out += "<polyline fill=\"none\" stroke=\"green\" stroke-width=\"2\" points=\"";
    for (std::size_t i = 0; i < trace.size(); ++i) {
      if (i) out += ' ';
      out += num(px(trace[i].pose.position.x)) + "," + num(px(trace[i].pose.position.y));
    }
    out += "\"/>\n";
  }

  const Vec2 s = env.start_pose.position;
  out += "<circle cx=\"" + num(px(s.x)) + "\" cy=\"" + num(px(s.y)) + "\" r=\"6\" fill=\"#1f77b4\"/>\n";
  out += "<text x=\"" + num(px(s.x) + 8) + "\" y=\"" + num(px(s.y) - 8) +
         "\" font-family=\"sans-serif\" font-size=\"14\">S</text>\n";
  const Vec2 t = env.target;
  out += "<circle cx=\"" + num(px(t.x)) + "\" cy=\"" + num(px(t.y)) + "\" r=\"6\" fill=\"#d62728\"/>\n";
  out += "<text x=\"" + num(px(t.x) + 8) + "\" y=\"" + num(px(t.y) - 8) +
         "\" font-family=\"sans-serif\" font-size=\"14\">T</text>\n";
  out += "</svg>\n";
  return out;
}

std::string summary_svg(const std::vector<SummaryEntry>& entries, std::string_view title) {
  const double col = 70.0;
  const double left = 60.0;
  const double panel = 200.0;
  const double top1 = 40.0;
  const double top2 = top1 + panel + 60.0;
  const double w = left + col * static_cast<double>(std::max<std::size_t>(entries.size(), 1)) + 20.0;
  const double h = top2 + panel + 90.0;
  std::string out = header(w, h);
  out += "<text x=\"" + num(left) + "\" y=\"20\" font-family=\"sans-serif\" font-size=\"14\">" + escape(title) +
         "</text>\n";

  // Success panel, 0..100 %.
  out += "<text x=\"4\" y=\"" + num(top1 + panel / 2) +
         "\" font-family=\"sans-serif\" font-size=\"11\">success</text>\n";
  for (int pct = 0; pct <= 100; pct += 25) {
    const double y = top1 + panel * (1.0 - pct / 100.0);
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(y) + "\" x2=\"" + num(w - 10) + "\" y2=\"" + num(y) +
           "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + num(left - 30) + "\" y=\"" + num(y + 4) + "\" font-family=\"sans-serif\" font-size=\"10\">" +
           std::to_string(pct) + "%</text>\n";
  }

  // Length panel, linear from 0 to a ceiling that shows the boxes.
  double top_value = 2.0;
  for (const auto& e : entries)
    if (std::isfinite(e.length_quartiles[3])) top_value = std::max(top_value, e.length_quartiles[3] * 1.5);
  top_value = std::ceil(top_value);
  auto ly = [&](double v) { return top2 + panel * (1.0 - std::clamp(v, 0.0, top_value) / top_value); };
  out += "<text x=\"4\" y=\"" + num(top2 + panel / 2) +
         "\" font-family=\"sans-serif\" font-size=\"11\">length</text>\n";
  const double step = std::max(1.0, std::ceil(top_value / 5.0));
  for (double v = 0.0; v <= top_value + 1e-9; v += step) {
    out += "<line x1=\"" + num(left) + "\" y1=\"" + num(ly(v)) + "\" x2=\"" + num(w - 10) + "\" y2=\"" + num(ly(v)) +
           "\" stroke=\"#dddddd\"/>\n";
    out += "<text x=\"" + num(left - 30) + "\" y=\"" + num(ly(v) + 4) +
           "\" font-family=\"sans-serif\" font-size=\"10\">" + num(v) + "</text>\n";
  }

  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    const double x0 = left + col * static_cast<double>(i) + 10.0;
    const double bw = col - 20.0;
    const double cx = x0 + bw / 2;
    const double bh = panel * std::clamp(e.success_rate, 0.0, 1.0);
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(top1 + panel - bh) + "\" width=\"" + num(bw) + "\" height=\"" +
           num(bh) + "\" fill=\"#1f77b4\"/>\n";
    out += "<text x=\"" + num(x0) + "\" y=\"" + num(top1 + panel - bh - 3) +
           "\" font-family=\"sans-serif\" font-size=\"10\">" + num(100.0 * e.success_rate) + "</text>\n";

    const auto& q = e.length_quartiles;
    out += "<line x1=\"" + num(cx) + "\" y1=\"" + num(ly(q[0])) + "\" x2=\"" + num(cx) + "\" y2=\"" + num(ly(q[4])) +
           "\" stroke=\"black\"/>\n";
    out += "<rect x=\"" + num(x0) + "\" y=\"" + num(ly(q[3])) + "\" width=\"" + num(bw) + "\" height=\"" +
           num(ly(q[1]) - ly(q[3])) + "\" fill=\"#aec7e8\" stroke=\"black\"/>\n";
    out += "<line x1=\"" + num(x0) + "\" y1=\"" + num(ly(q[2])) + "\" x2=\"" + num(x0 + bw) + "\" y2=\"" +
           num(ly(q[2])) + "\" stroke=\"black\" stroke-width=\"2\"/>\n";
    out += "<text x=\"" + num(x0) + "\" y=\"" + num(top2 + panel + 14) +
           "\" font-family=\"sans-serif\" font-size=\"10\" transform=\"rotate(30 " + num(x0) + " " +
           num(top2 + panel + 14) + ")\">" + escape(e.label) + "</text>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace bugnav
