#pragma once

#include <string>
#include <vector>

namespace sknn {

/// RFC 4180 CSV: quoted fields may contain commas, doubled quotes, and line
/// breaks. Records are returned including the header row.
std::vector<std::vector<std::string>> read_csv(const std::string& path);

/// Parse CSV from an in-memory buffer.
std::vector<std::vector<std::string>> parse_csv(const std::string& text);

}  // namespace sknn
