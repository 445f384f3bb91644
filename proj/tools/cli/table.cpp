#include "cli/table.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace focklab::cli {

const std::vector<double>& Table::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return columns[i];
  }
  throw std::out_of_range("no column '" + name + "'");
}

void Table::add_column(std::string name, std::vector<double> values) {
  if (!columns.empty() && values.size() != rows()) {
    throw std::invalid_argument("column '" + name + "' has the wrong length");
  }
  header.push_back(std::move(name));
  columns.push_back(std::move(values));
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv(std::ostream& os, const Table& t) {
  for (std::size_t i = 0; i < t.header.size(); ++i) os << (i ? "," : "") << t.header[i];
  os << '\n';
  for (std::size_t r = 0; r < t.rows(); ++r) {
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
      os << (c ? "," : "") << format_double(t.columns[c][r]);
    }
    os << '\n';
  }
}

void write_csv(const std::string& path, const Table& t) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "' for writing");
  write_csv(f, t);
  if (!f) throw std::runtime_error("write to '" + path + "' failed");
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream ss(line);
  while (std::getline(ss, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

double parse_cell(const std::string& s) {
  errno = 0;
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (s.empty() || end != s.c_str() + s.size()) throw std::runtime_error("bad CSV number '" + s + "'");
  return v;
}

}  // namespace

Table read_csv(std::istream& is) {
  Table t;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("CSV has no header row");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  t.header = split(line);
  t.columns.assign(t.header.size(), {});
  while (std::getline(is, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto cells = split(line);
    if (cells.size() != t.header.size()) throw std::runtime_error("ragged CSV row");
    for (std::size_t c = 0; c < cells.size(); ++c) t.columns[c].push_back(parse_cell(cells[c]));
  }
  return t;
}

Table read_csv(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open '" + path + "'");
  return read_csv(f);
}

}  // namespace focklab::cli
