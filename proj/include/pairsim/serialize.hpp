#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <string_view>

#include "pairsim/errors.hpp"

namespace pairsim {

// Shortest decimal form that parses back to the identical double. All text
// output (event files, configs, results) goes through these two functions so
// a write/read cycle is lossless and files are byte-stable across reruns.
inline std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

inline std::string format_u64(std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

// Parse helpers that name the offending field and line in their errors.
// line 0 means "not from a numbered line" and is omitted from the message.
template <typename Error = DataError>
double parse_double(std::string_view text, const std::string& what,
                    std::size_t line = 0) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error("cannot parse '" + std::string(text) + "' as a number for " +
                what + (line ? " (line " + std::to_string(line) + ")" : ""));
  }
  return v;
}

template <typename Error = DataError>
std::uint64_t parse_u64(std::string_view text, const std::string& what,
                        std::size_t line = 0) {
  std::uint64_t v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error("cannot parse '" + std::string(text) +
                "' as a non-negative integer for " + what +
                (line ? " (line " + std::to_string(line) + ")" : ""));
  }
  return v;
}

template <typename Error = DataError>
long long parse_i64(std::string_view text, const std::string& what,
                    std::size_t line = 0) {
  long long v = 0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
    throw Error("cannot parse '" + std::string(text) + "' as an integer for " +
                what + (line ? " (line " + std::to_string(line) + ")" : ""));
  }
  return v;
}

}  // namespace pairsim
