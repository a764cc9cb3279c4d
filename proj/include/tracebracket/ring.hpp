// Exact coefficient rings: integers mod n and two-variable integer Laurent
// polynomials.
#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>

namespace tracebracket {

class RingMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotAUnit : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, int line = 0, int column = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) +
                                          (column > 0 ? ", column " + std::to_string(column) : "") +
                                          ": " + what
                                    : what),
        line_(line),
        column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

namespace detail {

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("Laurent coefficient overflow");
  return r;
}

inline std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("Laurent coefficient overflow");
  return r;
}

inline std::int64_t mod_reduce(std::int64_t v, std::int64_t n) {
  v %= n;
  return v < 0 ? v + n : v;
}

}  // namespace detail

/// Which ring a value lives in.
class RingDescriptor {
 public:
  enum class Kind { Mod, Laurent };

  static RingDescriptor mod(std::int64_t modulus) {
    if (modulus < 2) throw std::invalid_argument("modulus must be at least 2");
    return RingDescriptor(Kind::Mod, modulus, "A", "B");
  }
  static RingDescriptor laurent(std::string first = "A", std::string second = "B") {
    if (first.empty() || second.empty() || first == second)
      throw std::invalid_argument("Laurent variable names must be distinct and non-empty");
    return RingDescriptor(Kind::Laurent, 0, std::move(first), std::move(second));
  }

  Kind kind() const { return kind_; }
  bool is_mod() const { return kind_ == Kind::Mod; }
  bool is_laurent() const { return kind_ == Kind::Laurent; }
  std::int64_t modulus() const { return modulus_; }
  const std::string& first_var() const { return var1_; }
  const std::string& second_var() const { return var2_; }

  std::string to_string() const {
    return is_mod() ? "mod " + std::to_string(modulus_) : "laurent " + var1_ + " " + var2_;
  }

  bool operator==(const RingDescriptor&) const = default;

 private:
  RingDescriptor(Kind k, std::int64_t m, std::string a, std::string b)
      : kind_(k), modulus_(m), var1_(std::move(a)), var2_(std::move(b)) {}

  Kind kind_;
  std::int64_t modulus_;
  std::string var1_;
  std::string var2_;
};

/// Exponent pair (i, j) of the monomial A^i B^j.
using Exponent = std::pair<int, int>;

/// An element of Z/n or Z[A^{+-1}, B^{+-1}]. Immutable value type; always
/// canonical (residues reduced, no zero Laurent coefficients), so structural
/// equality is ring equality.
class RingElement {
 public:
  using Terms = std::map<Exponent, std::int64_t>;

  static RingElement from_int(const RingDescriptor& ring, std::int64_t v) {
    if (ring.is_mod()) return RingElement(ring, detail::mod_reduce(v, ring.modulus()), {});
    Terms t;
    if (v != 0) t[{0, 0}] = v;
    return RingElement(ring, 0, std::move(t));
  }
  static RingElement zero(const RingDescriptor& ring) { return from_int(ring, 0); }
  static RingElement one(const RingDescriptor& ring) { return from_int(ring, 1); }

  static RingElement monomial(const RingDescriptor& ring, std::int64_t coeff, int i, int j) {
    if (!ring.is_laurent()) throw RingMismatch("monomial requires a Laurent ring");
    Terms t;
    if (coeff != 0) t[{i, j}] = coeff;
    return RingElement(ring, 0, std::move(t));
  }
  static RingElement from_terms(const RingDescriptor& ring, const Terms& terms) {
    if (!ring.is_laurent()) throw RingMismatch("terms require a Laurent ring");
    Terms t;
    for (const auto& [e, c] : terms)
      if (c != 0) t[e] = c;
    return RingElement(ring, 0, std::move(t));
  }

  const RingDescriptor& ring() const { return ring_; }
  /// Residue in [0, n). Only meaningful for mod rings.
  std::int64_t residue() const { return residue_; }
  const Terms& terms() const { return terms_; }

  bool is_zero() const { return ring_.is_mod() ? residue_ == 0 : terms_.empty(); }
  bool is_one() const { return *this == one(ring_); }

  friend RingElement operator+(const RingElement& a, const RingElement& b) {
    a.require_same(b);
    if (a.ring_.is_mod()) return RingElement(a.ring_, (a.residue_ + b.residue_) % a.ring_.modulus(), {});
    Terms t = a.terms_;
    for (const auto& [e, c] : b.terms_) {
      auto it = t.find(e);
      if (it == t.end()) {
        t.emplace(e, c);
      } else {
        it->second = detail::checked_add(it->second, c);
        if (it->second == 0) t.erase(it);
      }
    }
    return RingElement(a.ring_, 0, std::move(t));
  }

  RingElement operator-() const {
    if (ring_.is_mod()) return RingElement(ring_, detail::mod_reduce(-residue_, ring_.modulus()), {});
    Terms t = terms_;
    for (auto& kv : t) kv.second = -kv.second;
    return RingElement(ring_, 0, std::move(t));
  }

  friend RingElement operator-(const RingElement& a, const RingElement& b) { return a + (-b); }

  friend RingElement operator*(const RingElement& a, const RingElement& b) {
    a.require_same(b);
    if (a.ring_.is_mod()) {
      const auto n = a.ring_.modulus();
      return RingElement(a.ring_, static_cast<std::int64_t>((static_cast<__int128>(a.residue_) * b.residue_) % n),
                         {});
    }
    Terms t;
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        Exponent e{ea.first + eb.first, ea.second + eb.second};
        auto& slot = t[e];
        slot = detail::checked_add(slot, detail::checked_mul(ca, cb));
      }
    }
    std::erase_if(t, [](const auto& kv) { return kv.second == 0; });
    return RingElement(a.ring_, 0, std::move(t));
  }

  RingElement& operator+=(const RingElement& o) { return *this = *this + o; }
  RingElement& operator-=(const RingElement& o) { return *this = *this - o; }
  RingElement& operator*=(const RingElement& o) { return *this = *this * o; }

  bool is_unit() const {
    if (ring_.is_mod()) return std::gcd(residue_, ring_.modulus()) == 1;
    return terms_.size() == 1 && (terms_.begin()->second == 1 || terms_.begin()->second == -1);
  }

  RingElement inverse() const {
    if (!is_unit()) throw NotAUnit(to_string() + " is not a unit in " + ring_.to_string());
    if (ring_.is_mod()) {
      // Extended Euclid on (residue, n).
      std::int64_t a = residue_, n = ring_.modulus();
      std::int64_t old_r = a, r = n, old_s = 1, s = 0;
      while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
      }
      return RingElement(ring_, detail::mod_reduce(old_s, n), {});
    }
    const auto& [e, c] = *terms_.begin();
    return monomial(ring_, c, -e.first, -e.second);
  }

  /// e^k for any integer k; negative k requires a unit.
  RingElement pow(std::int64_t k) const {
    RingElement base = k < 0 ? inverse() : *this;
    std::uint64_t e = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
    RingElement result = one(ring_);
    while (e > 0) {
      if (e & 1U) result *= base;
      e >>= 1U;
      if (e > 0) base *= base;
    }
    return result;
  }

  bool operator==(const RingElement& o) const {
    return ring_ == o.ring_ && residue_ == o.residue_ && terms_ == o.terms_;
  }

  /// Deterministic total order within one ring: residues numerically,
  /// Laurent elements by their term lists in printing order.
  friend bool operator<(const RingElement& a, const RingElement& b) {
    a.require_same(b);
    if (a.ring_.is_mod()) return a.residue_ < b.residue_;
    return std::lexicographical_compare(a.terms_.rbegin(), a.terms_.rend(), b.terms_.rbegin(), b.terms_.rend());
  }

  /// Residues as decimals; Laurent elements as signed monomial sums in
  /// descending exponent order, e.g. `-A^-1*B - A^-3*B^3 + A^-9*B^9`.
  std::string to_string() const {
    if (ring_.is_mod()) return std::to_string(residue_);
    if (terms_.empty()) return "0";
    std::string out;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [e, c] = *it;
      const std::int64_t mag = c < 0 ? -c : c;
      if (first) {
        if (c < 0) out += "-";
      } else {
        out += c < 0 ? " - " : " + ";
      }
      first = false;
      std::string mono;
      auto add_var = [&](const std::string& v, int p) {
        if (p == 0) return;
        if (!mono.empty()) mono += "*";
        mono += v;
        if (p != 1) mono += "^" + std::to_string(p);
      };
      add_var(ring_.first_var(), e.first);
      add_var(ring_.second_var(), e.second);
      if (mono.empty()) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += mono;
      }
    }
    return out;
  }

 private:
  RingElement(RingDescriptor ring, std::int64_t residue, Terms terms)
      : ring_(std::move(ring)), residue_(residue), terms_(std::move(terms)) {}

  void require_same(const RingElement& o) const {
    if (!(ring_ == o.ring_))
      throw RingMismatch("ring mismatch: " + ring_.to_string() + " vs " + o.ring_.to_string());
  }

  RingDescriptor ring_;
  std::int64_t residue_ = 0;
  Terms terms_;
};

inline std::ostream& operator<<(std::ostream& os, const RingElement& e) { return os << e.to_string(); }

/// Parses a ring element. Mod rings take a decimal integer (reduced); Laurent
/// rings take a sum of monomials such as `-A^2*B^-1 + 3*B` (spaces optional).
inline RingElement parse_ring_element(const RingDescriptor& ring, const std::string& text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  if (s.empty()) throw ParseError("empty ring element");

  if (ring.is_mod()) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(s, &used);
    } catch (const std::exception&) {
      throw ParseError("expected integer, got '" + text + "'");
    }
    if (used != s.size()) throw ParseError("expected integer, got '" + text + "'");
    return RingElement::from_int(ring, v);
  }

  RingElement::Terms terms;
  std::size_t pos = 0;
  auto fail = [&](const std::string& why) { throw ParseError(why + " in '" + text + "'"); };
  auto read_int = [&]() -> std::int64_t {
    std::size_t start = pos;
    if (pos < s.size() && (s[pos] == '-' || s[pos] == '+')) ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == start || (pos == start + 1 && !std::isdigit(static_cast<unsigned char>(s[start]))))
      fail("expected integer");
    return std::stoll(s.substr(start, pos - start));
  };
  while (pos < s.size()) {
    int sign = 1;
    if (s[pos] == '+' || s[pos] == '-') {
      sign = s[pos] == '-' ? -1 : 1;
      ++pos;
    } else if (pos != 0) {
      fail("expected '+' or '-'");
    }
    std::int64_t coeff = 1;
    Exponent e{0, 0};
    bool any = false;
    while (pos < s.size() && s[pos] != '+' && s[pos] != '-') {
      if (any) {
        if (s[pos] != '*') fail("expected '*'");
        ++pos;
      }
      any = true;
      if (std::isdigit(static_cast<unsigned char>(s[pos]))) {
        coeff = detail::checked_mul(coeff, read_int());
        continue;
      }
      std::size_t start = pos;
      while (pos < s.size() && (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_')) ++pos;
      const std::string name = s.substr(start, pos - start);
      int power = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        power = static_cast<int>(read_int());
      }
      if (name == ring.first_var()) {
        e.first += power;
      } else if (name == ring.second_var()) {
        e.second += power;
      } else {
        fail("unknown variable '" + name + "'");
      }
    }
    if (!any) fail("empty term");
    auto& slot = terms[e];
    slot = detail::checked_add(slot, sign * coeff);
  }
  return RingElement::from_terms(ring, terms);
}

}  // namespace tracebracket
