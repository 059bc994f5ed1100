#ifndef EAWARD_TIME_HPP
#define EAWARD_TIME_HPP

#include <chrono>
#include <cstdint>
#include <string>
#include <string_view>

namespace eaward {

using UtcTime = std::chrono::sys_seconds;

/// "2019-03-28T15:46:53Z"
std::string format_iso8601(UtcTime t);
/// Strict "YYYY-MM-DDTHH:MM:SSZ"; throws InvalidDocument.
UtcTime parse_iso8601(std::string_view text);
/// "28 March 2019 at 15:46:53 UTC"
std::string format_long_utc(UtcTime t);

inline UtcTime from_unix(std::int64_t seconds) { return UtcTime{std::chrono::seconds{seconds}}; }
UtcTime now_utc();

} // namespace eaward

#endif
