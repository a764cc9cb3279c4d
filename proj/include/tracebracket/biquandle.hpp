// Finite biquandles as pairs of operation tables.
#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tracebracket/ring.hpp"
#include "tracebracket/text.hpp"

namespace tracebracket {

using Table = std::vector<std::vector<int>>;

/// under[x][y] = x ▷̲ y, over[x][y] = x ▷̄ y. Elements are 0-indexed.
class Biquandle {
 public:
  Biquandle() = default;
  Biquandle(Table under, Table over) : under_(std::move(under)), over_(std::move(over)) {
    const std::size_t n = under_.size();
    if (n == 0) throw std::invalid_argument("biquandle must have at least one element");
    auto check = [n](const Table& t, const char* name) {
      if (t.size() != n) throw std::invalid_argument(std::string(name) + " table has wrong row count");
      for (const auto& row : t) {
        if (row.size() != n) throw std::invalid_argument(std::string(name) + " table is not square");
        for (int v : row)
          if (v < 0 || v >= static_cast<int>(n))
            throw std::invalid_argument(std::string(name) + " table entry out of range");
      }
    };
    check(under_, "under");
    check(over_, "over");
  }

  int size() const { return static_cast<int>(under_.size()); }
  int under(int x, int y) const { return under_[x][y]; }
  int over(int x, int y) const { return over_[x][y]; }
  const Table& under_table() const { return under_; }
  const Table& over_table() const { return over_; }

  /// y(x) = x ▷̲ x, which equals x ▷̄ x in any biquandle.
  int diagonal(int x) const { return under_[x][x]; }

  static Biquandle trivial(int n) {
    Table t(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) t[x][y] = x;
    return Biquandle(t, t);
  }

  bool operator==(const Biquandle&) const = default;

 private:
  Table under_;
  Table over_;
};

struct AxiomViolation {
  std::string axiom;              // "i", "ii", "iii.1", ...
  std::vector<int> witness;       // 0-indexed elements
  std::string detail;
};

struct BiquandleReport {
  std::vector<AxiomViolation> violations;
  bool ok() const { return violations.empty(); }
};

/// Checks axioms (i)-(iii). Every violated instance is listed.
inline BiquandleReport verify_biquandle(const Biquandle& X) {
  BiquandleReport rep;
  const int n = X.size();
  auto U = [&](int a, int b) { return X.under(a, b); };
  auto O = [&](int a, int b) { return X.over(a, b); };

  for (int x = 0; x < n; ++x)
    if (U(x, x) != O(x, x))
      rep.violations.push_back({"i", {x}, "x^x=" + std::to_string(U(x, x) + 1) + " x_x=" + std::to_string(O(x, x) + 1)});

  for (int x = 0; x < n; ++x) {
    std::vector<int> seen_a(n, 0), seen_b(n, 0);
    for (int y = 0; y < n; ++y) {
      ++seen_a[O(y, x)];
      ++seen_b[U(y, x)];
    }
    for (int v = 0; v < n; ++v) {
      if (seen_a[v] != 1) {
        rep.violations.push_back({"ii", {x}, "alpha_x not bijective"});
        break;
      }
    }
    for (int v = 0; v < n; ++v) {
      if (seen_b[v] != 1) {
        rep.violations.push_back({"ii", {x}, "beta_x not bijective"});
        break;
      }
    }
  }
  {
    std::vector<int> seen(static_cast<std::size_t>(n) * n, 0);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) ++seen[static_cast<std::size_t>(O(y, x)) * n + U(x, y)];
    for (std::size_t k = 0; k < seen.size(); ++k) {
      if (seen[k] != 1) {
        rep.violations.push_back({"ii", {}, "S not bijective"});
        break;
      }
    }
  }

  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        int l = U(U(x, y), U(z, y)), r = U(U(x, z), O(y, z));
        if (l != r)
          rep.violations.push_back({"iii.1", {x, y, z}, std::to_string(l + 1) + " != " + std::to_string(r + 1)});
        l = O(U(x, y), U(z, y));
        r = U(O(x, z), O(y, z));
        if (l != r)
          rep.violations.push_back({"iii.2", {x, y, z}, std::to_string(l + 1) + " != " + std::to_string(r + 1)});
        l = O(O(x, y), O(z, y));
        r = O(O(x, z), U(y, z));
        if (l != r)
          rep.violations.push_back({"iii.3", {x, y, z}, std::to_string(l + 1) + " != " + std::to_string(r + 1)});
      }
    }
  }
  return rep;
}

/// x ▷̲ y = t x + (s - t) y, x ▷̄ y = s x over Z/n.
inline Biquandle alexander_biquandle(int n, int t, int s) {
  if (n < 1) throw std::invalid_argument("alexander: n must be positive");
  auto red = [n](long long v) { return static_cast<int>(((v % n) + n) % n); };
  if (std::gcd(red(t), n) != 1) throw NotAUnit("alexander: t=" + std::to_string(t) + " is not a unit mod " + std::to_string(n));
  if (std::gcd(red(s), n) != 1) throw NotAUnit("alexander: s=" + std::to_string(s) + " is not a unit mod " + std::to_string(n));
  Table U(n, std::vector<int>(n)), O(n, std::vector<int>(n));
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      U[x][y] = red(static_cast<long long>(t) * x + static_cast<long long>(s - t) * y);
      O[x][y] = red(static_cast<long long>(s) * x);
    }
  }
  return Biquandle(U, O);
}

/// File format: n, then n rows of 2n 1-indexed entries [under | over].
inline Biquandle parse_biquandle(const std::string& text) {
  auto lines = text::content_lines(text);
  if (lines.empty()) throw ParseError("empty biquandle file");
  auto head = text::split_tokens(lines[0]);
  if (head.size() != 1) throw ParseError("expected the element count alone", lines[0].number);
  const int n = static_cast<int>(text::parse_int(head[0], lines[0].number, head[0].column));
  if (n < 1) throw ParseError("element count must be positive", lines[0].number, head[0].column);
  if (static_cast<int>(lines.size()) != n + 1)
    throw ParseError("expected " + std::to_string(n) + " table rows, found " + std::to_string(lines.size() - 1),
                     lines.back().number);
  Table U(n, std::vector<int>(n)), O(n, std::vector<int>(n));
  for (int r = 0; r < n; ++r) {
    const auto& ln = lines[r + 1];
    auto toks = text::split_tokens(ln);
    if (static_cast<int>(toks.size()) != 2 * n)
      throw ParseError("row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(2 * n),
                       ln.number);
    for (int c = 0; c < 2 * n; ++c) {
      const long long v = text::parse_int(toks[c], ln.number, toks[c].column);
      if (v < 1 || v > n) throw ParseError("entry out of range 1.." + std::to_string(n), ln.number, toks[c].column);
      (c < n ? U[r][c] : O[r][c - n]) = static_cast<int>(v - 1);
    }
  }
  return Biquandle(U, O);
}

inline std::string serialize_biquandle(const Biquandle& X) {
  std::ostringstream os;
  const int n = X.size();
  os << n << "\n";
  for (int r = 0; r < n; ++r) {
    for (int c = 0; c < n; ++c) os << (c ? " " : "") << X.under(r, c) + 1;
    for (int c = 0; c < n; ++c) os << " " << X.over(r, c) + 1;
    os << "\n";
  }
  return os.str();
}

}  // namespace tracebracket
