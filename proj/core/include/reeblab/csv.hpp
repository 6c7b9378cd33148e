#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

/// CSV dialect shared by every artifact: comma separator, '.' decimal, 17 significant
/// digits for doubles, one header row.
namespace reeb::csv {

std::string format(double x);
/// Text cell, quoted when it contains a separator, a quote or a line break.
std::string quote(const std::string& text);

using Cell = std::variant<double, std::int64_t, std::string>;

class Writer {
 public:
  Writer(std::ostream& out, std::vector<std::string> header);

  void row(std::initializer_list<Cell> cells);
  void row(const std::vector<Cell>& cells);
  std::size_t columns() const { return header_.size(); }

 private:
  std::ostream* out_;
  std::vector<std::string> header_;
};

}  // namespace reeb::csv
