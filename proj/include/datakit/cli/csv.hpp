#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace datakit::cli {

using CsvRow = std::vector<std::string>;

/// RFC 4180: fields containing a comma, quote, CR or LF are quoted and inner
/// quotes doubled. Lines end with CRLF.
std::string format_csv(const std::vector<CsvRow>& rows);
/// Accepts CRLF or LF line ends. Throws ConfigError on an unterminated quote.
std::vector<CsvRow> parse_csv(const std::string& text);

void write_csv(const std::filesystem::path& path, const std::vector<CsvRow>& rows);

}  // namespace datakit::cli
