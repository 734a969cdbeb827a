#include "linkdecay/format.hpp"

#include <array>
#include <charconv>
#include <istream>
#include <string_view>

#include "linkdecay/error.hpp"

namespace linkdecay {

std::string format_real(double value) {
  std::array<char, 32> buffer{};
  auto [ptr, ec] = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value + 0.0);
  return std::string(buffer.data(), ptr);
}

namespace {

std::string_view trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r");
  return text.substr(first, last - first + 1);
}

}  // namespace

std::map<std::string, std::string> read_settings(std::istream& in) {
  std::map<std::string, std::string> settings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    auto view = trim(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected key=value");
    const auto key = trim(view.substr(0, eq));
    if (key.empty()) throw ParseError(line_no, "empty key");
    settings[std::string(key)] = std::string(trim(view.substr(eq + 1)));
  }
  return settings;
}

}  // namespace linkdecay
