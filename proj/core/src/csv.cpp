#include "reeblab/csv.hpp"

#include "reeblab/errors.hpp"

#include <cstdio>

namespace reeb::csv {

std::string format(double x) {
  char buf[40];
  const int n = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(n));
}

std::string quote(const std::string& text) {
  if (text.find_first_of(",\"\n\r") == std::string::npos) return text;
  std::string q = "\"";
  for (char ch : text) {
    if (ch == '"') q += '"';
    q += ch;
  }
  return q + '"';
}

Writer::Writer(std::ostream& out, std::vector<std::string> header)
    : out_(&out), header_(std::move(header)) {
  for (std::size_t i = 0; i < header_.size(); ++i) *out_ << (i ? "," : "") << quote(header_[i]);
  *out_ << '\n';
}

void Writer::row(std::initializer_list<Cell> cells) { row(std::vector<Cell>(cells)); }

void Writer::row(const std::vector<Cell>& cells) {
  if (cells.size() != header_.size())
    throw InvalidInput("csv row has " + std::to_string(cells.size()) + " cells, header has " +
                       std::to_string(header_.size()));
  bool first = true;
  for (const auto& c : cells) {
    if (!first) *out_ << ',';
    first = false;
    if (const auto* d = std::get_if<double>(&c)) {
      *out_ << format(*d);
    } else if (const auto* i = std::get_if<std::int64_t>(&c)) {
      *out_ << *i;
    } else {
      *out_ << quote(std::get<std::string>(c));
    }
  }
  *out_ << '\n';
}

}  // namespace reeb::csv
