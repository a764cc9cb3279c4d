// Line/token helpers shared by the file parsers.
#pragma once

#include <cctype>
#include <string>
#include <vector>

#include "tracebracket/ring.hpp"

namespace tracebracket::text {

struct Line {
  std::string content;
  int number;  // 1-based
};

struct Token {
  std::string value;
  int column;  // 1-based
};

/// Non-blank lines with `#` comments stripped.
inline std::vector<Line> content_lines(const std::string& text) {
  std::vector<Line> out;
  int number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string::npos) end = text.size();
    ++number;
    std::string ln = text.substr(pos, end - pos);
    if (auto h = ln.find('#'); h != std::string::npos) ln.erase(h);
    if (!ln.empty() && ln.back() == '\r') ln.pop_back();
    bool blank = true;
    for (char c : ln)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (!blank) out.push_back({ln, number});
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::vector<Token> split_tokens(const Line& ln) {
  std::vector<Token> out;
  const std::string& s = ln.content;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i >= s.size()) break;
    std::size_t j = i;
    while (j < s.size() && !std::isspace(static_cast<unsigned char>(s[j]))) ++j;
    out.push_back({s.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

inline long long parse_int(const Token& t, int line, int column) {
  std::size_t used = 0;
  long long v = 0;
  try {
    v = std::stoll(t.value, &used);
  } catch (const std::exception&) {
    throw ParseError("expected integer, got '" + t.value + "'", line, column);
  }
  if (used != t.value.size()) throw ParseError("expected integer, got '" + t.value + "'", line, column);
  return v;
}

}  // namespace tracebracket::text
