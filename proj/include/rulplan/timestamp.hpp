#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace rulplan {

using Timestamp = std::chrono::sys_time<std::chrono::milliseconds>;

/// Parses an RFC 3339 date-time ("2024-05-01T12:00:00Z",
/// "2024-05-01T14:00:00.250+02:00"). Sub-millisecond digits are truncated.
std::optional<Timestamp> parse_rfc3339(std::string_view text);

/// Formats as UTC with millisecond precision: "2024-05-01T12:00:00.000Z".
std::string format_rfc3339(Timestamp ts);

Timestamp now_utc();

}  // namespace rulplan
