#pragma once

#include <iosfwd>
#include <map>
#include <string>

namespace linkdecay {

/// Shortest decimal that round-trips; stable across runs, no signed zero.
std::string format_real(double value);

/// Reads `key=value` lines; blank lines and `#` comments are skipped, keys
/// and values are trimmed. Later keys override earlier ones. Throws
/// ParseError on a line without `=`.
std::map<std::string, std::string> read_settings(std::istream& in);

}  // namespace linkdecay
