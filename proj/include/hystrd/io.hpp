#pragma once

#include "hystrd/timeseries.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace hystrd {

/// Shortest decimal text that parses back to the same double ("inf", "-inf", "nan" for
/// the non-finite values).
std::string format_double(double v);

/// Inverse of format_double; throws InvalidArgument on malformed text.
double parse_double(std::string_view text);

struct CsvTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

void write_csv(std::ostream& out, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);
void write_csv(std::ostream& out, const TimeSeries& ts);

/// Reads a header line plus numeric rows as written by write_csv.
CsvTable read_csv(std::istream& in);

/// FNV-1a, 64 bit.
std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 14695981039346656037ull);
std::uint64_t fnv1a64(std::span<const double> values, std::uint64_t seed = 14695981039346656037ull);

std::string hex64(std::uint64_t v);

} // namespace hystrd
