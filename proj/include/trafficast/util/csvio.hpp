#pragma once

#include <string>
#include <vector>

namespace trafficast {

/// Split one CSV line on commas. No quoting support; none of the formats
/// used here embed commas in fields.
std::vector<std::string> split_csv_line(const std::string& line);

/// Read all lines of a text file, tolerating a trailing newline and CRLF.
/// Throws IoError if the file cannot be opened.
std::vector<std::string> read_lines(const std::string& path);

/// Write a text file atomically enough for our purposes (truncate + write).
void write_text_file(const std::string& path, const std::string& content);

} // namespace trafficast
