#pragma once

#include <cstdio>
#include <string>

namespace aldm::detail {

// Locale-independent fixed-point formatting used by every CSV and SVG writer.
inline std::string fixed(double value, int decimals = 6) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s(buf);
  if (s == "-0" || s.find_first_not_of("-0.") == std::string::npos) {
    if (!s.empty() && s[0] == '-') s.erase(0, 1);
  }
  return s;
}

}  // namespace aldm::detail
