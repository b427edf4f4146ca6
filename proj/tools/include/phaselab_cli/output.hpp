#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>

namespace phaselab::cli {

std::uint64_t fnv1a64(std::string_view data) noexcept;
std::string hex64(std::uint64_t v);

// Writes `content` to `path` through a sibling temporary and a rename, or to
// `out` when path is empty or "-".
void write_output(const std::string& path, const std::string& content, std::ostream& out);

// Shortest round-trip decimal form, used for every number in CSV output.
std::string format_double(double v);

enum class LogLevel { quiet = 0, info = 1, debug = 2 };

// Parses PHASELAB_LOG: quiet|0, info|1 (default), debug|2.
LogLevel log_level_from_env();

}  // namespace phaselab::cli
