#include "cli/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace focklab::cli {

namespace {

constexpr double kPanelW = 320, kPanelH = 260, kMarginL = 48, kMarginR = 12, kMarginT = 28,
                 kMarginB = 36;
const char* kColors[] = {"#1f5fa8", "#c0392b", "#2e8b57", "#8e44ad"};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char ch : s) {
    switch (ch) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += ch;
    }
  }
  return out;
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels, bool log_y) {
  if (panels.empty()) throw std::invalid_argument("nothing to plot");
  std::ostringstream os;
  const double width = kPanelW * panels.size();
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << kPanelH
     << "\" viewBox=\"0 0 " << width << ' ' << kPanelH << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const Panel& pan = panels[p];
    auto ty = [&](double y) { return log_y ? std::log10(y) : y; };
    double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
    for (const auto& c : pan.curves) {
      for (std::size_t i = 0; i < c.x.size(); ++i) {
        if (!std::isfinite(c.x[i]) || !std::isfinite(c.y[i]) || (log_y && c.y[i] <= 0)) continue;
        x0 = std::min(x0, c.x[i]);
        x1 = std::max(x1, c.x[i]);
        y0 = std::min(y0, ty(c.y[i]));
        y1 = std::max(y1, ty(c.y[i]));
      }
    }
    if (pan.y_lo < pan.y_hi) {
      y0 = ty(pan.y_lo);
      y1 = ty(pan.y_hi);
    }
    if (!(x1 > x0)) x1 = x0 + 1;
    if (!(y1 > y0)) y1 = y0 + 1;
    const double left = p * kPanelW + kMarginL, right = (p + 1) * kPanelW - kMarginR;
    const double top = kMarginT, bottom = kPanelH - kMarginB;
    auto sx = [&](double x) { return left + (x - x0) / (x1 - x0) * (right - left); };
    auto sy = [&](double y) { return bottom - (ty(y) - y0) / (y1 - y0) * (bottom - top); };

    os << "<g>\n<text x=\"" << fmt((left + right) / 2) << "\" y=\"16\" text-anchor=\"middle\">"
       << escape(pan.title) << "</text>\n";
    os << "<rect x=\"" << fmt(left) << "\" y=\"" << fmt(top) << "\" width=\"" << fmt(right - left)
       << "\" height=\"" << fmt(bottom - top) << "\" fill=\"none\" stroke=\"#444\"/>\n";
    for (int t = 0; t <= 4; ++t) {
      const double xv = x0 + (x1 - x0) * t / 4, yv = y0 + (y1 - y0) * t / 4;
      os << "<text x=\"" << fmt(sx(xv)) << "\" y=\"" << fmt(bottom + 14)
         << "\" text-anchor=\"middle\">" << fmt(xv) << "</text>\n";
      const double ylab = log_y ? std::pow(10.0, yv) : yv;
      os << "<text x=\"" << fmt(left - 4) << "\" y=\"" << fmt(bottom - (yv - y0) / (y1 - y0) * (bottom - top) + 4)
         << "\" text-anchor=\"end\">" << fmt(ylab) << "</text>\n";
    }
    os << "<text x=\"" << fmt((left + right) / 2) << "\" y=\"" << fmt(kPanelH - 6)
       << "\" text-anchor=\"middle\">r</text>\n";
    for (std::size_t ci = 0; ci < pan.curves.size(); ++ci) {
      const Curve& c = pan.curves[ci];
      std::ostringstream pts;
      auto flush = [&] {
        if (!pts.str().empty()) {
          os << "<polyline fill=\"none\" stroke-width=\"1.5\" stroke=\"" << kColors[ci % 4]
             << "\" points=\"" << pts.str() << "\"><title>" << escape(c.label) << "</title></polyline>\n";
        }
        pts.str("");
      };
      for (std::size_t i = 0; i < c.x.size(); ++i) {
        const bool ok = std::isfinite(c.x[i]) && std::isfinite(c.y[i]) && !(log_y && c.y[i] <= 0);
        if (!ok) {
          flush();
          continue;
        }
        // Clip to the panel so off-scale points do not leave the frame.
        const double yy = std::clamp(sy(c.y[i]), top, bottom);
        pts << fmt(sx(c.x[i])) << ',' << fmt(yy) << ' ';
      }
      flush();
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

void write_svg(const std::string& path, const std::vector<Panel>& panels, bool log_y) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  f << render_svg(panels, log_y);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

}  // namespace focklab::cli
