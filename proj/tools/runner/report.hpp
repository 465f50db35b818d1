#pragma once

#include <string>
#include <vector>

#include "nlparab/field.hpp"

namespace nlparab::tools {

// every number in a report goes through this: 12 significant digits
std::string num12(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> cells) { rows.push_back(std::move(cells)); }
};

// column documentation for the manifest: which operation produced the values
struct ColumnDoc {
  std::string name;
  std::string op;
};

// CSV text with a mandatory header row; preamble lines are emitted first,
// each prefixed with "# "
std::string csv_text(const Table& table,
                     const std::vector<std::string>& preamble = {});

// field dump, one row per (t, x, value); the preamble records the kernel
// spec, h, dt and theta
std::string field_csv(const SolutionField& field);

}  // namespace nlparab::tools
