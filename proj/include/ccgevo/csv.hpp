#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace ccgevo {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double value);

/// Splits one CSV line on commas. Fields never contain commas or quotes in
/// the files this library writes, so no quoting is handled.
std::vector<std::string> split_csv_line(std::string_view line);

/// Reads a whole text file; throws IoError.
std::string read_text_file(const std::string& path);
/// Writes (replacing) a text file; throws IoError.
void write_text_file(const std::string& path, std::string_view contents);

}  // namespace ccgevo
