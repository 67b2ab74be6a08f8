#include "cpheat/csv.hpp"

#include <cstdio>
#include <ostream>

namespace cpheat {

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_csv_metadata(std::ostream& out, const CsvMetadata& meta) {
  out << "# cpheat " << CPHEAT_VERSION << '\n';
  for (const auto& [key, value] : meta) out << "# " << key << '=' << value << '\n';
}

void write_csv_columns(std::ostream& out, const std::vector<std::string>& names) {
  for (std::size_t i = 0; i < names.size(); ++i) out << (i ? "," : "") << names[i];
  out << '\n';
}

void write_csv_row(std::ostream& out, std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) out << (i ? "," : "") << format_double(values[i]);
  out << '\n';
}

}  // namespace cpheat
