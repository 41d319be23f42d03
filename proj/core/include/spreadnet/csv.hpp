#pragma once

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace spreadnet {

// Renders a double with "%.9g", the fixed precision used in every CSV this
// project writes. Non-finite values raise ValidationError: output files
// must never contain nan or inf cells.
std::string format_number(double v);

class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& os) : os_(os) {}

  void header(const std::vector<std::string>& names);
  void row(std::span<const double> values);

 private:
  std::ostream& os_;
  std::size_t columns_ = 0;
  bool header_written_ = false;
};

}  // namespace spreadnet
