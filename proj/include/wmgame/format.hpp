#pragma once

#include <charconv>
#include <string>
#include <system_error>

#include "wmgame/error.hpp"

namespace wmgame {

// Shortest decimal string that round-trips to the same double.
inline std::string format_double(double value) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, res.ptr);
}

inline double parse_double(const std::string& text, const std::string& where) {
  const char* first = text.data();
  const char* last = first + text.size();
  double value = 0.0;
  auto res = std::from_chars(first, last, value);
  if (res.ec != std::errc() || res.ptr != last) {
    throw GameError(ErrorCategory::kParse, "parse-error",
                    "bad number '" + text + "' in " + where);
  }
  return value;
}

}  // namespace wmgame
