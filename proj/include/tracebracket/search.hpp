// Backtracking search for biquandle brackets over Z_n.
#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracebracket/bracket.hpp"
#include "tracebracket/biquandle.hpp"
#include "tracebracket/ring.hpp"

namespace tracebracket {

struct SearchSpec {
  Biquandle biquandle = Biquandle::trivial(1);
  std::int64_t modulus = 2;
  std::optional<std::string> class_filter;  // adequate | over | under | neither
  std::optional<std::size_t> limit;
  std::optional<std::int64_t> delta;        // restrict to one δ
  int threads = 1;
};

struct SearchResult {
  BiquandleBracket bracket;
  AdequacyClass adequacy;
};

namespace detail {

using Flat = std::vector<std::int64_t>;

struct RawBracket {
  std::int64_t delta;
  Flat A, B;
  bool operator<(const RawBracket& o) const {
    return std::tie(delta, A, B) < std::tie(o.delta, o.A, o.B);
  }
};

inline std::vector<std::int64_t> units_mod(std::int64_t n) {
  std::vector<std::int64_t> u;
  for (std::int64_t a = 1; a < n; ++a)
    if (std::gcd(a, n) == 1) u.push_back(a);
  return u;
}

class BracketSearcher {
 public:
  BracketSearcher(const Biquandle& X, std::int64_t n) : X_(X), n_(n), k_(X.size()), units_(units_mod(n)) {
    // diagonal cells first, then the rest row by row
    for (int x = 0; x < k_; ++x) order_.push_back(x * k_ + x);
    for (int x = 0; x < k_; ++x)
      for (int y = 0; y < k_; ++y)
        if (x != y) order_.push_back(x * k_ + y);
    std::vector<int> pos(k_ * k_);
    for (int i = 0; i < k_ * k_; ++i) pos[order_[i]] = i;
    checks_.resize(k_ * k_);
    for (int x = 0; x < k_; ++x)
      for (int y = 0; y < k_; ++y)
        for (int z = 0; z < k_; ++z) {
          Triple t{cell(x, y), cell(y, z), cell(X.under(x, y), X.over(z, y)),
                   cell(x, z), cell(X.over(y, x), X.over(z, x)), cell(X.under(x, z), X.under(y, z))};
          int last = 0;
          for (int c : {t.xy, t.yz, t.pq, t.xz, t.r, t.s}) last = std::max(last, pos[c]);
          checks_[last].push_back(t);
        }
  }

  /// All brackets with the given δ, in emission order.
  std::vector<RawBracket> run(std::int64_t delta) {
    delta_ = delta;
    out_.clear();
    // (A, B) candidates: B a unit root of B² + δAB + A² = 0
    cand_.clear();
    for (auto a : units_)
      for (auto b : units_)
        if (mod(mul(b, b) + mul(mul(delta, a), b) + mul(a, a)) == 0) cand_.push_back({a, b});
    A_.assign(k_ * k_, 0);
    B_.assign(k_ * k_, 0);
    w_.reset();
    descend(0);
    std::sort(out_.begin(), out_.end());
    return out_;
  }

  std::int64_t modulus() const { return n_; }

 private:
  struct Triple {
    int xy, yz, pq, xz, r, s;
  };

  int cell(int x, int y) const { return x * k_ + y; }
  std::int64_t mod(std::int64_t v) const { return ((v % n_) + n_) % n_; }
  std::int64_t mul(std::int64_t a, std::int64_t b) const { return mod(a * b); }
  std::int64_t inv(std::int64_t a) const {
    for (auto u : units_)
      if (mul(u, a) == 1) return u;
    throw std::logic_error("not a unit");
  }

  bool triple_ok(const Triple& t) const {
    auto a = [&](int c) { return A_[c]; };
    auto b = [&](int c) { return B_[c]; };
    const auto d = delta_;
    auto m3 = [&](std::int64_t p, std::int64_t q, std::int64_t r) { return mul(mul(p, q), r); };
    if (m3(a(t.xy), a(t.yz), a(t.pq)) != m3(a(t.xz), a(t.r), a(t.s))) return false;
    if (m3(a(t.xy), b(t.yz), b(t.pq)) != m3(b(t.xz), b(t.r), a(t.s))) return false;
    if (m3(b(t.xy), a(t.yz), b(t.pq)) != m3(b(t.xz), a(t.r), b(t.s))) return false;
    if (m3(a(t.xy), a(t.yz), b(t.pq)) !=
        mod(m3(a(t.xz), b(t.r), a(t.s)) + m3(a(t.xz), a(t.r), b(t.s)) + mul(d, m3(a(t.xz), b(t.r), b(t.s))) +
            m3(b(t.xz), b(t.r), b(t.s))))
      return false;
    if (mod(m3(b(t.xy), a(t.yz), a(t.pq)) + m3(a(t.xy), b(t.yz), a(t.pq)) + mul(d, m3(b(t.xy), b(t.yz), a(t.pq))) +
            m3(b(t.xy), b(t.yz), b(t.pq))) != m3(b(t.xz), a(t.r), a(t.s)))
      return false;
    return true;
  }

  void descend(int i) {
    if (i == k_ * k_) {
      out_.push_back({delta_, A_, B_});
      return;
    }
    const int c = order_[i];
    const bool diag = i < k_;
    for (const auto& [a, b] : cand_) {
      std::optional<std::int64_t> saved = w_;
      if (diag) {
        const auto w = mod(-mul(mul(a, a), inv(b)));
        if (w_ && *w_ != w) continue;
        w_ = w;
      }
      A_[c] = a;
      B_[c] = b;
      bool ok = true;
      for (const auto& t : checks_[i])
        if (!triple_ok(t)) {
          ok = false;
          break;
        }
      if (ok) descend(i + 1);
      w_ = saved;
    }
  }

  Biquandle X_;
  std::int64_t n_;
  int k_;
  std::vector<std::int64_t> units_;
  std::vector<int> order_;
  std::vector<std::vector<Triple>> checks_;
  std::vector<std::pair<std::int64_t, std::int64_t>> cand_;
  std::int64_t delta_ = 0;
  std::optional<std::int64_t> w_;
  Flat A_, B_;
  std::vector<RawBracket> out_;
};

inline BiquandleBracket to_bracket(const Biquandle& X, std::int64_t n, const Flat& A, const Flat& B) {
  const int k = X.size();
  BracketTables t;
  t.ring = RingDescriptor::mod(n);
  t.A.assign(k, std::vector<RingElement>(k, RingElement::zero(t.ring)));
  t.B = t.A;
  for (int x = 0; x < k; ++x)
    for (int y = 0; y < k; ++y) {
      t.A[x][y] = RingElement::from_int(t.ring, A[x * k + y]);
      t.B[x][y] = RingElement::from_int(t.ring, B[x * k + y]);
    }
  return make_bracket(X, t);
}

inline RawBracket to_raw(const BiquandleBracket& b) {
  RawBracket r{b.delta().residue(), {}, {}};
  for (const auto& row : b.A_table())
    for (const auto& e : row) r.A.push_back(e.residue());
  for (const auto& row : b.B_table())
    for (const auto& e : row) r.B.push_back(e.residue());
  return r;
}

}  // namespace detail

/// Every bracket over Z_n for the biquandle, sorted by (δ, A, B) and
/// classified. The filter and limit apply after sorting.
inline std::vector<SearchResult> search_brackets(const SearchSpec& spec) {
  if (spec.modulus < 2) throw std::invalid_argument("modulus must be at least 2");
  std::vector<std::int64_t> deltas;
  if (spec.delta) {
    deltas.push_back(((*spec.delta % spec.modulus) + spec.modulus) % spec.modulus);
  } else {
    for (std::int64_t d = 0; d < spec.modulus; ++d) deltas.push_back(d);
  }
  std::vector<std::vector<detail::RawBracket>> per(deltas.size());
  if (spec.threads > 1) {
    std::vector<std::future<std::vector<detail::RawBracket>>> fut;
    for (auto d : deltas)
      fut.push_back(std::async(std::launch::async, [&, d] {
        detail::BracketSearcher s(spec.biquandle, spec.modulus);
        return s.run(d);
      }));
    for (std::size_t i = 0; i < fut.size(); ++i) per[i] = fut[i].get();
  } else {
    detail::BracketSearcher s(spec.biquandle, spec.modulus);
    for (std::size_t i = 0; i < deltas.size(); ++i) per[i] = s.run(deltas[i]);
  }
  std::vector<SearchResult> out;
  for (const auto& group : per)
    for (const auto& raw : group) {
      auto b = detail::to_bracket(spec.biquandle, spec.modulus, raw.A, raw.B);
      auto cls = classify_adequacy(b);
      if (spec.class_filter && *spec.class_filter != "any" && cls.label() != *spec.class_filter) continue;
      out.push_back({std::move(b), cls});
      if (spec.limit && out.size() >= *spec.limit) return out;
    }
  return out;
}

/// Literal enumeration of every pair of unit tables, kept if it is a bracket.
inline std::vector<BiquandleBracket> brute_force_brackets(const Biquandle& X, std::int64_t n, std::uint64_t cap) {
  const auto units = detail::units_mod(n);
  const int cells = X.size() * X.size();
  long double total = 1;
  for (int i = 0; i < 2 * cells; ++i) total *= units.size();
  if (total > static_cast<long double>(cap))
    throw std::length_error("brute force needs " + std::to_string(static_cast<double>(total)) +
                            " candidates, cap is " + std::to_string(cap));
  const auto ring = RingDescriptor::mod(n);
  const int k = X.size();
  std::vector<std::size_t> idx(2 * cells, 0);
  std::vector<detail::RawBracket> found;
  while (true) {
    BracketTables t;
    t.ring = ring;
    t.A.assign(k, std::vector<RingElement>(k, RingElement::zero(ring)));
    t.B = t.A;
    for (int c = 0; c < cells; ++c) {
      t.A[c / k][c % k] = RingElement::from_int(ring, units[idx[c]]);
      t.B[c / k][c % k] = RingElement::from_int(ring, units[idx[cells + c]]);
    }
    auto chk = verify_bracket(X, t);
    if (chk.ok()) found.push_back(detail::to_raw(*chk.bracket));
    int i = 0;
    while (i < 2 * cells && ++idx[i] == units.size()) idx[i++] = 0;
    if (i == 2 * cells) break;
  }
  std::sort(found.begin(), found.end());
  std::vector<BiquandleBracket> out;
  for (const auto& r : found) out.push_back(detail::to_bracket(X, n, r.A, r.B));
  return out;
}

}  // namespace tracebracket
