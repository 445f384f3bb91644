#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace focklab::cli {

// Column-major numeric table with a mandatory header row.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
  const std::vector<double>& column(const std::string& name) const;
  void add_column(std::string name, std::vector<double> values);
};

// 17 significant digits, so that read_csv(write_csv(t)) == t bit for bit.
std::string format_double(double v);
void write_csv(std::ostream& os, const Table& t);
void write_csv(const std::string& path, const Table& t);
Table read_csv(std::istream& is);
Table read_csv(const std::string& path);

}  // namespace focklab::cli
