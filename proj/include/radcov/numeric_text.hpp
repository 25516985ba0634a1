#pragma once

#include <charconv>
#include <string>

namespace radcov {

/// Shortest decimal form that round-trips to the same double. Locale
/// independent, so identical values always serialize to identical bytes.
inline std::string number_text(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace radcov
