#pragma once

#include "kscert/errors.hpp"

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace kscert::detail {

struct Line {
  std::vector<std::string> tokens;
  std::string comment;  // text after '#', trimmed
};

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline Line split_line(std::string_view raw) {
  Line line;
  const auto hash = raw.find('#');
  if (hash != std::string_view::npos) {
    line.comment = trim(raw.substr(hash + 1));
    raw = raw.substr(0, hash);
  }
  std::istringstream is{std::string(raw)};
  for (std::string tok; is >> tok;) line.tokens.push_back(tok);
  return line;
}

inline std::vector<std::string> lines_of(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) out.emplace_back(text.substr(start));
      break;
    }
    out.emplace_back(text.substr(start, nl - start));
    start = nl + 1;
  }
  return out;
}

inline int parse_int(const std::string& tok, std::size_t line_no, const char* what) {
  int value = 0;
  const auto* end = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(tok.data(), end, value);
  if (ec != std::errc{} || ptr != end) {
    throw ParseError(line_no, std::string("expected integer ") + what + ", got '" + tok + "'");
  }
  return value;
}

}  // namespace kscert::detail
