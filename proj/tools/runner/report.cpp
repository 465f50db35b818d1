#include "runner/report.hpp"

#include <cstdio>

#include "nlparab/kernel_spec.hpp"

namespace nlparab::tools {

std::string num12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_text(const Table& table,
                     const std::vector<std::string>& preamble) {
  std::string out;
  for (const auto& line : preamble) {
    out += "# ";
    out += line;
    out += '\n';
  }
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c) out += ',';
    out += table.columns[c];
  }
  out += '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out += ',';
      out += row[c];
    }
    out += '\n';
  }
  return out;
}

std::string field_csv(const SolutionField& field) {
  std::vector<std::string> preamble;
  std::string kline = "kernel:";
  try {
    for (const auto& [k, v] : kernel_to_spec(field.kernel))
      kline += " " + k + "=" + v;
  } catch (const std::invalid_argument&) {
    kline += " (custom density, no flat form)";
  }
  preamble.push_back(kline);
  preamble.push_back("h=" + num12(field.grid.h) + " dt=" + num12(field.dt) +
                     " theta=" + num12(field.theta));

  Table t;
  const int dim = field.grid.dim;
  t.columns = dim == 1 ? std::vector<std::string>{"t", "x", "value"}
                       : std::vector<std::string>{"t", "x1", "x2", "value"};
  for (std::size_t n = 0; n < field.times.size(); ++n) {
    for (std::size_t i = 0; i < field.grid.nodes.size(); ++i) {
      std::vector<std::string> row;
      row.push_back(num12(field.times[n]));
      row.push_back(num12(field.grid.nodes[i][0]));
      if (dim == 2) row.push_back(num12(field.grid.nodes[i][1]));
      row.push_back(num12(field.values[n][i]));
      t.add_row(std::move(row));
    }
  }
  return csv_text(t, preamble);
}

}  // namespace nlparab::tools
