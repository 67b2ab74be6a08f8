#pragma once

// CSV output with '#'-prefixed metadata lines and round-trip precision.

#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace cpheat {

using CsvMetadata = std::vector<std::pair<std::string, std::string>>;

/// 17 significant digits.
std::string format_double(double v);

/// "# key=value" per entry, preceded by the library version.
void write_csv_metadata(std::ostream& out, const CsvMetadata& meta);

void write_csv_columns(std::ostream& out, const std::vector<std::string>& names);

void write_csv_row(std::ostream& out, std::span<const double> values);

}  // namespace cpheat
