// Biquandle colorings of oriented diagrams.
#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tracebracket/biquandle.hpp"
#include "tracebracket/diagram.hpp"

namespace tracebracket {

/// Colors are 0-indexed biquandle elements. arcs[id - 1] is the color of
/// semiarc id; loops[i] colors the i-th free circle.
struct Coloring {
  std::vector<int> arcs;
  std::vector<int> loops;

  int arc(int id) const { return arcs.at(static_cast<std::size_t>(id - 1)); }
  auto operator<=>(const Coloring&) const = default;
};

/// The color pair (x, y) read at a crossing: the colors on the two semiarcs
/// to its left. For a positive crossing that is (u_in, o_out), for a
/// negative one (u_out, o_in). The other two semiarcs are then forced:
///   positive: u_out = x ▷̲ y, o_in = y ▷̄ x
///   negative: u_in  = x ▷̲ y, o_out = y ▷̄ x
struct ColorPair {
  int x;
  int y;
  auto operator<=>(const ColorPair&) const = default;
};

struct SlotColors {
  int u_in, o_in, o_out, u_out;
};

inline ColorPair crossing_pair(int sign, const SlotColors& c) {
  return sign > 0 ? ColorPair{c.u_in, c.o_out} : ColorPair{c.u_out, c.o_in};
}

inline bool crossing_condition(const Biquandle& X, int sign, const SlotColors& c) {
  const auto [x, y] = crossing_pair(sign, c);
  if (sign > 0) return c.u_out == X.under(x, y) && c.o_in == X.over(y, x);
  return c.u_in == X.under(x, y) && c.o_out == X.over(y, x);
}

/// Slot colors forced by a pair.
inline SlotColors slots_from_pair(const Biquandle& X, int sign, ColorPair p) {
  if (sign > 0) return {p.x, X.over(p.y, p.x), p.y, X.under(p.x, p.y)};
  return {X.under(p.x, p.y), p.y, X.over(p.y, p.x), p.x};
}

inline SlotColors slot_colors(const Crossing& c, const Coloring& col) {
  return {col.arc(c.u_in), col.arc(c.o_in), col.arc(c.o_out), col.arc(c.u_out)};
}

inline bool validate_coloring(const OrientedDiagram& d, const Biquandle& X, const Coloring& col) {
  if (static_cast<int>(col.arcs.size()) != d.semiarc_count() ||
      static_cast<int>(col.loops.size()) != d.free_loops())
    throw std::invalid_argument("coloring is not total on the diagram");
  for (int v : col.arcs)
    if (v < 0 || v >= X.size()) return false;
  for (int v : col.loops)
    if (v < 0 || v >= X.size()) return false;
  for (const auto& c : d.crossings())
    if (!crossing_condition(X, c.sign, slot_colors(c, col))) return false;
  return true;
}

namespace detail {

/// Backtracking solver over crossing-like constraints. Each constraint is a
/// signed 4-slot record on variable indices; the biquandle's invertible
/// column maps let any two "adjacent" known slots force the others.
class ColoringSolver {
 public:
  struct Node {
    int sign;
    int u_in, o_in, o_out, u_out;  // variable indices
  };

  ColoringSolver(const Biquandle& X, std::vector<Node> nodes, int vars)
      : X_(X), nodes_(std::move(nodes)), vars_(vars), watch_(vars) {
    const int n = X.size();
    inv_alpha_.assign(n, std::vector<int>(n));
    inv_beta_.assign(n, std::vector<int>(n));
    for (int x = 0; x < n; ++x) {
      for (int y = 0; y < n; ++y) {
        inv_alpha_[x][X.over(y, x)] = y;
        inv_beta_[x][X.under(y, x)] = y;
      }
    }
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      const auto& nd = nodes_[i];
      for (int v : {nd.u_in, nd.o_in, nd.o_out, nd.u_out}) watch_[v].push_back(i);
    }
  }

  /// All solutions extending `fixed` (entries -1 are free), sorted.
  std::vector<std::vector<int>> solve(std::vector<int> fixed) const {
    std::vector<std::vector<int>> out;
    std::vector<std::size_t> queue;
    for (std::size_t i = 0; i < nodes_.size(); ++i) queue.push_back(i);
    if (propagate(fixed, queue)) dfs(fixed, out);
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  bool set(std::vector<int>& a, int v, int c, std::vector<std::size_t>& queue) const {
    if (a[v] == c) return true;
    if (a[v] != -1) return false;
    a[v] = c;
    for (auto i : watch_[v]) queue.push_back(i);
    return true;
  }

  // Left pair (x, y) is (l1, l2); r1 = x ▷̲ y, r2 = y ▷̄ x.
  bool apply(std::vector<int>& a, int l1, int l2, int r1, int r2, std::vector<std::size_t>& queue) const {
    int x = a[l1], y = a[l2];
    if (x != -1 && y == -1 && a[r2] != -1) {
      y = inv_alpha_[x][a[r2]];
      if (!set(a, l2, y, queue)) return false;
    }
    if (x == -1 && y != -1 && a[r1] != -1) {
      x = inv_beta_[y][a[r1]];
      if (!set(a, l1, x, queue)) return false;
    }
    if (x != -1 && y != -1) {
      if (!set(a, r1, X_.under(x, y), queue)) return false;
      if (!set(a, r2, X_.over(y, x), queue)) return false;
    }
    return true;
  }

  bool propagate(std::vector<int>& a, std::vector<std::size_t>& queue) const {
    while (!queue.empty()) {
      const auto& nd = nodes_[queue.back()];
      queue.pop_back();
      const bool ok = nd.sign > 0 ? apply(a, nd.u_in, nd.o_out, nd.u_out, nd.o_in, queue)
                                  : apply(a, nd.u_out, nd.o_in, nd.u_in, nd.o_out, queue);
      if (!ok) return false;
    }
    return true;
  }

  void dfs(std::vector<int>& a, std::vector<std::vector<int>>& out) const {
    auto it = std::find(a.begin(), a.end(), -1);
    if (it == a.end()) {
      out.push_back(a);
      return;
    }
    const int v = static_cast<int>(it - a.begin());
    for (int c = 0; c < X_.size(); ++c) {
      auto b = a;
      std::vector<std::size_t> queue;
      if (set(b, v, c, queue) && propagate(b, queue)) dfs(b, out);
    }
  }

  const Biquandle& X_;
  std::vector<Node> nodes_;
  int vars_;
  std::vector<std::vector<std::size_t>> watch_;
  std::vector<std::vector<int>> inv_alpha_, inv_beta_;
};

}  // namespace detail

/// Every valid coloring, in lexicographic order of (arcs, loops).
inline std::vector<Coloring> enumerate_colorings(const OrientedDiagram& d, const Biquandle& X) {
  require_valid(d);
  std::vector<detail::ColoringSolver::Node> nodes;
  for (const auto& c : d.crossings()) nodes.push_back({c.sign, c.u_in - 1, c.o_in - 1, c.o_out - 1, c.u_out - 1});
  detail::ColoringSolver solver(X, nodes, d.semiarc_count());
  auto arcs = solver.solve(std::vector<int>(d.semiarc_count(), -1));

  std::vector<Coloring> out;
  std::vector<int> loops(d.free_loops(), 0);
  for (const auto& a : arcs) {
    std::fill(loops.begin(), loops.end(), 0);
    while (true) {
      out.push_back({a, loops});
      int k = d.free_loops() - 1;
      while (k >= 0 && loops[k] == X.size() - 1) loops[k--] = 0;
      if (k < 0) break;
      ++loops[k];
    }
  }
  return out;
}

inline std::size_t counting_invariant(const OrientedDiagram& d, const Biquandle& X) {
  return enumerate_colorings(d, X).size();
}

/// A braid crossing between two adjacent upward strands, given by its
/// bottom-left, bottom-right, top-left and top-right semiarcs. Positive
/// means the strand entering bottom-left passes under, so the left-hand
/// semiarcs (BL, TL) are the crossing's color pair for either sign.
inline Crossing braid_crossing(int sign, int bl, int br, int tl, int tr) {
  if (sign > 0) return {1, bl, br, tl, tr};
  return {-1, br, bl, tr, tl};
}

/// One side of a Reidemeister III move as a 3-strand braid tangle, with its
/// semiarcs grouped into the left, middle and right columns.
struct BraidTangle {
  std::vector<Crossing> crossings;
  int semiarcs = 0;
  std::vector<int> left, middle, right;
};

/// side 0: s1 s2 s1, side 1: s2 s1 s2, read bottom to top. Bit i of
/// `signs` set makes crossing i negative.
inline BraidTangle riii_braid(int side, int signs) {
  auto sg = [signs](int i) { return (signs >> i) & 1 ? -1 : 1; };
  BraidTangle t;
  t.semiarcs = 9;
  if (side == 0) {
    // 1,2,3 bottom ends; 4 = c1->c3 (col 1); 5 = c1->c2, 6 = c2->c3 (col 2);
    // 7,8,9 top ends
    t.crossings = {braid_crossing(sg(0), 1, 2, 4, 5), braid_crossing(sg(1), 5, 3, 6, 9),
                   braid_crossing(sg(2), 4, 6, 7, 8)};
    t.left = {1, 4, 7};
    t.middle = {2, 5, 6, 8};
    t.right = {3, 9};
  } else {
    // 4 = c1->c2 (col 2); 5 = c1->c3 (col 3); 6 = c2->c3 (col 2)
    t.crossings = {braid_crossing(sg(0), 2, 3, 4, 5), braid_crossing(sg(1), 1, 4, 7, 6),
                   braid_crossing(sg(2), 6, 5, 8, 9)};
    t.left = {1, 7};
    t.middle = {2, 4, 6, 8};
    t.right = {3, 5, 9};
  }
  return t;
}

/// Colorings of an open tangle with some semiarcs pinned (ids 1-based,
/// pins as {id, color}).
inline std::vector<std::vector<int>> tangle_colorings(const Biquandle& X, const std::vector<Crossing>& cs,
                                                      int semiarcs,
                                                      const std::vector<std::pair<int, int>>& pins) {
  std::vector<detail::ColoringSolver::Node> nodes;
  for (const auto& c : cs) nodes.push_back({c.sign, c.u_in - 1, c.o_in - 1, c.o_out - 1, c.u_out - 1});
  detail::ColoringSolver solver(X, nodes, semiarcs);
  std::vector<int> fixed(semiarcs, -1);
  for (auto [id, c] : pins) fixed[id - 1] = c;
  return solver.solve(fixed);
}

struct RiiiFailure {
  int x;
  int side;
  int signs;  // bit i set: crossing i negative
  std::string detail;
};

struct RiiiReport {
  std::vector<RiiiFailure> failures;
  bool ok() const { return failures.empty(); }
};

/// With the left column of the s1 s2 s1 side colored x, every sign pattern
/// must color its middle column y = x ▷̲ x and its right column z = y ▷̲ y.
/// The s2 s1 s2 side, fed the same bottom colors, must show the same
/// columns and the same top colors.
inline RiiiReport monochromatic_riii_check(const Biquandle& X) {
  RiiiReport rep;
  auto columns_ok = [&](const BraidTangle& t, const std::vector<int>& c, int x, int side, int signs) {
    bool ok = true;
    auto need = [&](const std::vector<int>& ids, int want, const char* col) {
      for (int id : ids) {
        if (c[id - 1] != want) {
          rep.failures.push_back({x, side, signs, std::string(col) + " semiarc " + std::to_string(id) + " has color " +
                                                      std::to_string(c[id - 1] + 1)});
          ok = false;
        }
      }
    };
    const int y = X.diagonal(x);
    need(t.left, x, "left");
    need(t.middle, y, "middle");
    need(t.right, X.diagonal(y), "right");
    return ok;
  };
  for (int x = 0; x < X.size(); ++x) {
    for (int signs = 0; signs < 8; ++signs) {
      const auto lhs = riii_braid(0, signs);
      std::vector<std::pair<int, int>> pins;
      for (int id : lhs.left) pins.push_back({id, x});
      const auto cols = tangle_colorings(X, lhs.crossings, lhs.semiarcs, pins);
      if (cols.size() != 1) {
        rep.failures.push_back({x, 0, signs, std::to_string(cols.size()) + " colorings"});
        continue;
      }
      const auto& c = cols.front();
      if (!columns_ok(lhs, c, x, 0, signs)) continue;

      // Crossing i of one side sits where crossing 2 - i of the other does.
      const int mirrored = ((signs & 1) << 2) | (signs & 2) | ((signs >> 2) & 1);
      const auto rhs = riii_braid(1, mirrored);
      const auto rc = tangle_colorings(X, rhs.crossings, rhs.semiarcs, {{1, c[0]}, {2, c[1]}, {3, c[2]}});
      if (rc.size() != 1) {
        rep.failures.push_back({x, 1, mirrored, std::to_string(rc.size()) + " colorings"});
        continue;
      }
      if (!columns_ok(rhs, rc.front(), x, 1, mirrored)) continue;
      for (int id : {7, 8, 9})
        if (rc.front()[id - 1] != c[id - 1])
          rep.failures.push_back({x, 1, mirrored, "top semiarc " + std::to_string(id) + " differs between sides"});
    }
  }
  return rep;
}

}  // namespace tracebracket
