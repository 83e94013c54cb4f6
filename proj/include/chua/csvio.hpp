#pragma once

// Round-trip-exact numeric formatting and small CSV helpers. All emitted
// data files go through format_double so that regression comparisons are
// byte-stable across runs and worker counts.

#include <string>
#include <vector>

namespace chua {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// One CSV line from already-formatted fields.
std::string csv_line(const std::vector<std::string>& fields);

/// Write a whole file; throws std::runtime_error if the path is unwritable.
void write_text_file(const std::string& path, const std::string& content);

}  // namespace chua
