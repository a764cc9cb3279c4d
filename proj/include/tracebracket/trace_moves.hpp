// Trace moves checked on small open tangles: both sides of a move are
// evaluated to a map from boundary connectivity to ring value and compared
// coloring by coloring.
#pragma once

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "tracebracket/bracket.hpp"
#include "tracebracket/coloring.hpp"
#include "tracebracket/trace.hpp"

namespace tracebracket {

/// Pairs of boundary edge ids joined by an arc, sorted.
using Matching = std::vector<std::pair<int, int>>;
using TangleValue = std::map<Matching, RingElement>;

namespace detail {

inline void tangle_states(const TraceDiagram& td, const BiquandleBracket& beta, const RingElement& coef,
                          TangleValue& out) {
  if (td.crossing_count() > 0) {
    for (Smoothing s : {Smoothing::A, Smoothing::B}) {
      auto [c, next] = smooth_crossing(td, 0, s, beta);
      tangle_states(next, beta, coef * c, out);
    }
    return;
  }
  const int m = td.edge_count();
  std::vector<int> uses(m + 1, 0);
  for (const auto& n : td.nodes)
    for (int e : {n.u_in, n.o_in, n.o_out, n.u_out}) ++uses[e];
  UnionFind uf(m + 1);
  for (const auto& n : td.nodes) join_node(uf, n, false);
  std::map<std::size_t, std::vector<int>> comps;
  for (int e = 1; e <= m; ++e) comps[uf.find(e)];
  for (int e = 1; e <= m; ++e)
    if (uses[e] == 1) comps[uf.find(e)].push_back(e);
  int loops = td.free_loops;
  Matching match;
  for (const auto& [root, ends] : comps) {
    if (ends.empty()) {
      ++loops;
    } else if (ends.size() == 2) {
      match.push_back({ends[0], ends[1]});
    } else {
      throw std::logic_error("tangle component with " + std::to_string(ends.size()) + " boundary ends");
    }
  }
  std::sort(match.begin(), match.end());
  auto term = coef * beta.delta().pow(loops);
  auto it = out.find(match);
  if (it == out.end()) {
    out.emplace(match, term);
  } else {
    it->second += term;
  }
}

}  // namespace detail

/// Value of a colored open tangle: for each boundary connectivity, the sum
/// over states of coefficients times δ^(closed loops), times w^(n-p) over
/// crossings and traces. Zero entries are dropped.
inline TangleValue evaluate_tangle(const TraceDiagram& td, const BiquandleBracket& beta) {
  TangleValue raw;
  detail::tangle_states(td, beta, beta.one(), raw);
  const auto wf = beta.w().pow(detail::sign_balance(td, true));
  TangleValue out;
  for (auto& [m, v] : raw) {
    auto val = v * wf;
    if (!val.is_zero()) out.emplace(m, val);
  }
  return out;
}

enum class MoveFamily { Over, Under };

inline std::string to_string(MoveFamily f) { return f == MoveFamily::Over ? "over" : "under"; }

/// One side-pair of a move. Boundary edges carry the same ids on both sides.
/// Nodes marked as traces take their color pair from each coloring.
struct MoveSchema {
  std::string id;
  MoveFamily family;
  std::vector<TraceNode> lhs;
  std::vector<TraceNode> rhs;
  std::vector<int> boundary;
};

namespace detail {

/// Three strands X, Y, Z through a Reidemeister III configuration.
/// Boundary ids 1..6 = Xi Yi Zi Xo Yo Zo; 7, 8, 9 are the interior semiarcs
/// of X, Y, Z.
inline std::vector<TraceNode> riii_side(int side) {
  auto X = [](int s, int a, int b, int c, int d) { return TraceNode{NodeKind::Crossing, s, a, b, c, d, {}}; };
  if (side == 0) return {X(1, 1, 2, 8, 7), X(1, 8, 9, 6, 5), X(1, 7, 3, 9, 4)};
  return {X(1, 1, 9, 6, 7), X(1, 2, 3, 9, 8), X(1, 7, 8, 5, 4)};
}

inline std::vector<int> strand_edges(char s) {
  switch (s) {
    case 'X':
      return {1, 7, 4};
    case 'Y':
      return {2, 8, 5};
    default:
      return {3, 9, 6};
  }
}

/// Reverses a strand: at each node its in/out slots trade places and the
/// node's sign flips.
inline void reverse_strand(std::vector<TraceNode>& nodes, const std::vector<int>& edges) {
  auto on = [&](int e) { return std::find(edges.begin(), edges.end(), e) != edges.end(); };
  for (auto& n : nodes) {
    if (on(n.u_in) && on(n.u_out)) {
      std::swap(n.u_in, n.u_out);
      n.sign = -n.sign;
    }
    if (on(n.o_in) && on(n.o_out)) {
      std::swap(n.o_in, n.o_out);
      n.sign = -n.sign;
    }
  }
}

inline std::vector<MoveSchema> make_over_under_schemas() {
  std::vector<MoveSchema> out;
  const std::string revs[4] = {"", "Y", "Z", "YZ"};
  for (MoveFamily fam : {MoveFamily::Over, MoveFamily::Under}) {
    // Over: the strand crossing over the others is smoothed on both sides;
    // under: the crossing passing beneath both.
    const int li = fam == MoveFamily::Over ? 0 : 1;
    const int ri = fam == MoveFamily::Over ? 2 : 1;
    for (NodeKind kind : {NodeKind::TraceA, NodeKind::TraceB}) {
      for (const auto& rv : revs) {
        MoveSchema s;
        s.family = fam;
        s.id = to_string(fam) + "-" + (kind == NodeKind::TraceA ? "A" : "B") + (rv.empty() ? "" : "-rev" + rv);
        s.lhs = riii_side(0);
        s.rhs = riii_side(1);
        s.lhs[li].kind = kind;
        s.rhs[ri].kind = kind;
        for (char c : rv) {
          reverse_strand(s.lhs, strand_edges(c));
          reverse_strand(s.rhs, strand_edges(c));
        }
        s.boundary = {1, 2, 3, 4, 5, 6};
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

}  // namespace detail

struct MoveCheckResult {
  bool holds = true;
  std::string detail;  // first discrepancy
};

namespace detail {

/// Colorings of one side, keyed by boundary colors. Trace nodes obey the
/// crossing rule with their pair read from the coloring.
inline std::map<std::vector<int>, std::vector<TraceDiagram>> colored_side(const std::vector<TraceNode>& nodes,
                                                                          const MoveSchema& s, const Biquandle& X) {
  int m = 0;
  for (const auto& n : nodes) m = std::max({m, n.u_in, n.o_in, n.o_out, n.u_out});
  std::vector<ColoringSolver::Node> cons;
  for (const auto& n : nodes) cons.push_back({n.sign, n.u_in - 1, n.o_in - 1, n.o_out - 1, n.u_out - 1});
  ColoringSolver solver(X, cons, m);
  std::map<std::vector<int>, std::vector<TraceDiagram>> out;
  for (auto& arcs : solver.solve(std::vector<int>(m, -1))) {
    TraceDiagram td;
    td.nodes = nodes;
    td.colors = Coloring{arcs, {}};
    for (auto& n : td.nodes)
      if (n.is_trace()) n.pair = crossing_pair(n.sign, slot_colors(n, td.colors));
    std::vector<int> key;
    for (int b : s.boundary) key.push_back(arcs[b - 1]);
    out[key].push_back(std::move(td));
  }
  return out;
}

inline std::string value_string(const TangleValue& v) {
  std::string s = "{";
  bool first = true;
  for (const auto& [m, val] : v) {
    if (!first) s += ", ";
    first = false;
    s += "[";
    for (std::size_t i = 0; i < m.size(); ++i) s += (i ? " " : "") + std::to_string(m[i].first) + "-" + std::to_string(m[i].second);
    s += "]:" + val.to_string();
  }
  return s + "}";
}

}  // namespace detail

/// Both sides must admit the same boundary colorings, and for each the two
/// tangle values must agree.
inline MoveCheckResult check_move(const MoveSchema& s, const BiquandleBracket& beta) {
  const auto& X = beta.biquandle();
  const auto L = detail::colored_side(s.lhs, s, X);
  const auto R = detail::colored_side(s.rhs, s, X);
  auto key_string = [](const std::vector<int>& k) {
    std::string out;
    for (int v : k) out += (out.empty() ? "" : ",") + std::to_string(v + 1);
    return out;
  };
  for (const auto& [k, tds] : L) {
    auto it = R.find(k);
    if (it == R.end()) return {false, "boundary colors (" + key_string(k) + ") only color the left side"};
    if (tds.size() != 1 || it->second.size() != 1)
      return {false, "boundary colors (" + key_string(k) + ") do not determine the interior"};
    const auto lv = evaluate_tangle(tds.front(), beta);
    const auto rv = evaluate_tangle(it->second.front(), beta);
    if (lv != rv)
      return {false, "boundary colors (" + key_string(k) + "): " + detail::value_string(lv) +
                         " vs " + detail::value_string(rv)};
  }
  for (const auto& kv : R)
    if (!L.count(kv.first)) return {false, "boundary colors (" + key_string(kv.first) + ") only color the right side"};
  return {};
}

inline const std::vector<MoveSchema>& move_schemas() {
  static const std::vector<MoveSchema> all = detail::make_over_under_schemas();
  return all;
}

inline const MoveSchema& find_move(const std::string& id) {
  for (const auto& s : move_schemas())
    if (s.id == id) return s;
  throw std::invalid_argument("unknown move '" + id + "'");
}

/// True iff every schema of the family holds for the bracket.
inline MoveCheckResult trace_move_family_check(const BiquandleBracket& beta, MoveFamily fam) {
  for (const auto& s : move_schemas()) {
    if (s.family != fam) continue;
    auto r = check_move(s, beta);
    if (!r.holds) return {false, s.id + ": " + r.detail};
  }
  return {};
}

inline bool trace_move_fixture_check(const BiquandleBracket& beta, const std::string& move_id) {
  return check_move(find_move(move_id), beta).holds;
}

}  // namespace tracebracket
