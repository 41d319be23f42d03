#include "spreadnet/csv.hpp"

#include <cmath>
#include <cstdio>

#include "spreadnet/errors.hpp"

namespace spreadnet {

std::string format_number(double v) {
  if (!std::isfinite(v)) {
    throw ValidationError("refusing to write a non-finite value to CSV");
  }
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

void CsvWriter::header(const std::vector<std::string>& names) {
  if (header_written_) {
    throw ValidationError("CSV header already written");
  }
  if (names.empty()) {
    throw ValidationError("CSV header needs at least one column");
  }
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) os_ << ',';
    os_ << names[i];
  }
  os_ << '\n';
  columns_ = names.size();
  header_written_ = true;
}

void CsvWriter::row(std::span<const double> values) {
  if (!header_written_) {
    throw ValidationError("CSV row written before the header");
  }
  if (values.size() != columns_) {
    throw ValidationError("CSV row width does not match the header");
  }
  // Format the whole row before streaming so a bad cell can't leave a
  // half-written line behind.
  std::string line;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) line += ',';
    line += format_number(values[i]);
  }
  line += '\n';
  os_ << line;
}

}  // namespace spreadnet
