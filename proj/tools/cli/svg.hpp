#pragma once

#include <string>
#include <vector>

namespace focklab::cli {

struct Curve {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct Panel {
  std::string title;
  std::vector<Curve> curves;
  // y-range; when lo >= hi it is taken from the data.
  double y_lo = 0.0;
  double y_hi = 0.0;
};

// Panels side by side, one polyline per curve. Non-finite points break the
// line. With log_y the y axis is logarithmic and non-positive values are
// dropped.
std::string render_svg(const std::vector<Panel>& panels, bool log_y = false);
void write_svg(const std::string& path, const std::vector<Panel>& panels, bool log_y = false);

}  // namespace focklab::cli
