#pragma once

#include <string>
#include <vector>

namespace gaffine::cli {

/// Nine significant digits, as printed in tables.
std::string table_number(double v);

/// Shortest text that reads back to the same double, as written to files.
std::string file_number(double v);

/// Right-aligned columns separated by two spaces, header first, LF endings.
std::string render_table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

/// Comma-separated, header first, LF endings.
std::string render_csv(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows);

} // namespace gaffine::cli
