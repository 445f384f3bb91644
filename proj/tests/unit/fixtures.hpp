#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace testing {

struct MlRow {
  double a, b, x, value;
};

struct LgRow {
  double x, value;
};

inline std::string fixture_path(const std::string& name) {
  return std::string(FOCKLAB_FIXTURE_DIR) + "/" + name;
}

inline std::vector<std::vector<std::string>> read_rows(const std::string& name) {
  std::ifstream f(fixture_path(name));
  if (!f) throw std::runtime_error("missing fixture " + name);
  std::vector<std::vector<std::string>> rows;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    std::vector<std::string> cells;
    std::string c;
    while (ls >> c) cells.push_back(c);
    rows.push_back(cells);
  }
  return rows;
}

inline std::vector<MlRow> mittag_leffler_rows() {
  std::vector<MlRow> out;
  for (const auto& r : read_rows("mittag_leffler.txt")) {
    out.push_back({std::stod(r.at(0)), std::stod(r.at(1)), std::stod(r.at(2)), std::stod(r.at(3))});
  }
  return out;
}

inline std::vector<LgRow> log_gamma_rows() {
  std::vector<LgRow> out;
  for (const auto& r : read_rows("log_gamma.txt")) out.push_back({std::stod(r.at(0)), std::stod(r.at(1))});
  return out;
}

}  // namespace testing
