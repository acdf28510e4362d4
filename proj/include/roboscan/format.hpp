#pragma once

// Small text helpers shared by reports, traces and config echo.

#include <charconv>
#include <cstdio>
#include <string>
#include <string_view>

namespace roboscan {

/// Shortest decimal that parses back to exactly `v`.
inline std::string exact(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline std::string fixed_n(double v, int digits) {
  char buf[64];
  const int n = std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return std::string(buf, static_cast<std::size_t>(n));
}

inline std::string fixed6(double v) { return fixed_n(v, 6); }

inline std::string pad_right(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  else out.push_back(' ');
  return out;
}

}  // namespace roboscan
