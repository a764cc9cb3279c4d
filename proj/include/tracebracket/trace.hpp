// Colored trace diagrams and their recursive evaluation.
#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tracebracket/bracket.hpp"
#include "tracebracket/coloring.hpp"
#include "tracebracket/diagram.hpp"

namespace tracebracket {

/// Every node has the four crossing slots. How the strands pass through
/// once traces are deleted:
///   Crossing       u_in -> u_out, o_in -> o_out
///   TraceA, Marker u_in -> o_out, o_in -> u_out
///   TraceB         u_in -- o_in (sink), o_out -- u_out (source)
/// A Marker is an unsigned smoothing site; it carries no w factor and
/// requires each of its two strands to keep its color.
enum class NodeKind { Crossing, TraceA, TraceB, Marker };

struct TraceNode {
  NodeKind kind = NodeKind::Crossing;
  int sign = 1;
  int u_in = 0, o_in = 0, o_out = 0, u_out = 0;
  ColorPair pair{0, 0};  // traces only: the smoothed crossing's pair

  bool is_trace() const { return kind == NodeKind::TraceA || kind == NodeKind::TraceB; }
  bool operator==(const TraceNode&) const = default;
};

class NotRIReducible : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class MultiComponentCrossing : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Edges are 1-based ids; `colors` follows the same layout as Coloring.
/// An edge used in only one slot is a boundary edge (open tangles).
struct TraceDiagram {
  std::vector<TraceNode> nodes;
  int free_loops = 0;
  Coloring colors;

  int edge_count() const {
    int m = 0;
    for (const auto& n : nodes) m = std::max({m, n.u_in, n.o_in, n.o_out, n.u_out});
    return m;
  }
  std::size_t crossing_count() const {
    return static_cast<std::size_t>(
        std::count_if(nodes.begin(), nodes.end(), [](const auto& n) { return n.kind == NodeKind::Crossing; }));
  }
  /// Index into `nodes` of the i-th crossing.
  std::size_t crossing_node(std::size_t i) const {
    for (std::size_t k = 0; k < nodes.size(); ++k)
      if (nodes[k].kind == NodeKind::Crossing && i-- == 0) return k;
    throw std::out_of_range("crossing index out of range");
  }
};

inline TraceDiagram from_diagram(const OrientedDiagram& d, const Coloring& col) {
  TraceDiagram td;
  for (const auto& c : d.crossings()) td.nodes.push_back({NodeKind::Crossing, c.sign, c.u_in, c.o_in, c.o_out, c.u_out, {}});
  td.free_loops = d.free_loops();
  td.colors = col;
  return td;
}

inline SlotColors slot_colors(const TraceNode& n, const Coloring& col) {
  return {col.arc(n.u_in), col.arc(n.o_in), col.arc(n.o_out), col.arc(n.u_out)};
}

struct TraceReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Incidence and color checks. With `closed`, every edge must be born once
/// and die once.
inline TraceReport validate_trace_diagram(const TraceDiagram& td, const Biquandle& X, bool closed = true) {
  TraceReport rep;
  const int m = td.edge_count();
  std::vector<int> born(m + 1, 0), dies(m + 1, 0);
  for (const auto& n : td.nodes) {
    if (std::min({n.u_in, n.o_in, n.o_out, n.u_out}) < 1) {
      rep.problems.push_back("edge ids must be positive");
      return rep;
    }
    if (n.sign != 1 && n.sign != -1) rep.problems.push_back("sign must be +1 or -1");
    ++dies[n.u_in];
    ++dies[n.o_in];
    ++born[n.o_out];
    ++born[n.u_out];
  }
  for (int id = 1; id <= m; ++id) {
    if (born[id] + dies[id] == 0) rep.problems.push_back("edge " + std::to_string(id) + " missing");
    if (born[id] > 1 || dies[id] > 1 || (closed && (born[id] != 1 || dies[id] != 1)))
      rep.problems.push_back("edge " + std::to_string(id) + " has bad incidence");
  }
  if (!rep.ok()) return rep;
  if (static_cast<int>(td.colors.arcs.size()) != m || static_cast<int>(td.colors.loops.size()) != td.free_loops) {
    rep.problems.push_back("coloring is not total");
    return rep;
  }
  for (int v : td.colors.arcs)
    if (v < 0 || v >= X.size()) rep.problems.push_back("color out of range");
  for (int v : td.colors.loops)
    if (v < 0 || v >= X.size()) rep.problems.push_back("color out of range");
  if (!rep.ok()) return rep;
  for (std::size_t i = 0; i < td.nodes.size(); ++i) {
    const auto& n = td.nodes[i];
    const auto sc = slot_colors(n, td.colors);
    bool good = true;
    if (n.kind == NodeKind::Marker) {
      good = sc.u_in == sc.o_out && sc.o_in == sc.u_out;
    } else {
      good = crossing_condition(X, n.sign, sc);
      if (n.is_trace() && !(crossing_pair(n.sign, sc) == n.pair)) good = false;
    }
    if (!good) rep.problems.push_back("color condition fails at node " + std::to_string(i + 1));
  }
  return rep;
}

/// Replaces the index-th crossing by a trace of the given kind. Returns the
/// coefficient A, B (positive) or A^-1, B^-1 (negative) of its pair.
inline std::pair<RingElement, TraceDiagram> smooth_crossing(const TraceDiagram& td, std::size_t index, Smoothing kind,
                                                            const BiquandleBracket& beta) {
  const std::size_t k = td.crossing_node(index);
  TraceDiagram out = td;
  auto& n = out.nodes[k];
  n.pair = crossing_pair(n.sign, slot_colors(n, td.colors));
  n.kind = kind == Smoothing::A ? NodeKind::TraceA : NodeKind::TraceB;
  return {beta.coeff(kind, n.sign, n.pair), std::move(out)};
}

namespace detail {

/// Joins the edges a node's strands connect once traces are deleted.
/// Crossings pass straight through when `straight_crossings` is set.
inline void join_node(UnionFind& uf, const TraceNode& n, bool straight_crossings) {
  switch (n.kind) {
    case NodeKind::Crossing:
      if (!straight_crossings) throw std::logic_error("crossing in a crossingless evaluation");
      uf.unite(n.u_in, n.u_out);
      uf.unite(n.o_in, n.o_out);
      break;
    case NodeKind::TraceA:
    case NodeKind::Marker:
      uf.unite(n.u_in, n.o_out);
      uf.unite(n.o_in, n.u_out);
      break;
    case NodeKind::TraceB:
      uf.unite(n.u_in, n.o_in);
      uf.unite(n.o_out, n.u_out);
      break;
  }
}

inline int component_count(const TraceDiagram& td, bool straight_crossings) {
  const int m = td.edge_count();
  UnionFind uf(m + 1);
  for (const auto& n : td.nodes) detail::join_node(uf, n, straight_crossings);
  std::set<std::size_t> roots;
  for (int id = 1; id <= m; ++id) roots.insert(uf.find(id));
  return static_cast<int>(roots.size()) + td.free_loops;
}

/// Signed traces (and crossings when asked): negatives minus positives.
inline int sign_balance(const TraceDiagram& td, bool with_crossings) {
  int s = 0;
  for (const auto& n : td.nodes)
    if (n.is_trace() || (with_crossings && n.kind == NodeKind::Crossing)) s -= n.sign;
  return s;
}

}  // namespace detail

/// w^(n-p) δ^k for a diagram without crossings.
inline RingElement evaluate_crossingless(const TraceDiagram& td, const BiquandleBracket& beta) {
  if (td.crossing_count() != 0) throw std::invalid_argument("diagram still has crossings");
  const int k = detail::component_count(td, false);
  return beta.delta().pow(k) * beta.w().pow(detail::sign_balance(td, false));
}

/// Expands crossings depth first. `order`, if given, is a permutation of
/// the current crossing indices naming which crossing to expand next.
inline RingElement evaluate_recursive(const TraceDiagram& td, const BiquandleBracket& beta,
                                      const std::vector<std::size_t>& order = {}) {
  const std::size_t c = td.crossing_count();
  if (c == 0) return evaluate_crossingless(td, beta);
  if (!order.empty() && order.size() != c) throw std::invalid_argument("expansion order has the wrong length");
  const std::size_t pick = order.empty() ? 0 : order.front();
  std::vector<std::size_t> rest;
  for (std::size_t i = 1; i < order.size(); ++i) {
    if (order[i] == pick) throw std::invalid_argument("expansion order repeats a crossing");
    rest.push_back(order[i] > pick ? order[i] - 1 : order[i]);
  }
  RingElement total = beta.zero();
  for (Smoothing s : {Smoothing::A, Smoothing::B}) {
    auto [coef, next] = smooth_crossing(td, pick, s, beta);
    total += coef * evaluate_recursive(next, beta, rest);
  }
  return total;
}

enum class Parity { Odd, Even, MultiComponent };

inline std::string to_string(Parity p) {
  switch (p) {
    case Parity::Odd:
      return "odd";
    case Parity::Even:
      return "even";
    default:
      return "multi-component";
  }
}

namespace detail {

enum Slot { UIn = 0, OIn = 1, OOut = 2, UOut = 3 };

inline int slot_edge(const TraceNode& n, int s) {
  switch (s) {
    case UIn:
      return n.u_in;
    case OIn:
      return n.o_in;
    case OOut:
      return n.o_out;
    default:
      return n.u_out;
  }
}

/// For each edge, the (node, slot) at each of its ends.
struct Incidence {
  std::vector<std::pair<int, int>> tail;  // where the edge is born (output slot)
  std::vector<std::pair<int, int>> head;  // where it dies (input slot)

  explicit Incidence(const TraceDiagram& td) {
    const int m = td.edge_count();
    tail.assign(m + 1, {-1, -1});
    head.assign(m + 1, {-1, -1});
    for (std::size_t i = 0; i < td.nodes.size(); ++i) {
      const auto& n = td.nodes[i];
      const int k = static_cast<int>(i);
      head[n.u_in] = {k, UIn};
      head[n.o_in] = {k, OIn};
      tail[n.o_out] = {k, OOut};
      tail[n.u_out] = {k, UOut};
    }
  }

  /// Leaves node k through slot s; returns where the edge ends up.
  std::pair<int, int> cross_edge(const TraceDiagram& td, int k, int s) const {
    const int e = slot_edge(td.nodes[k], s);
    return (s == UIn || s == OIn) ? tail[e] : head[e];
  }
};

/// Slot paired with s when passing through a node.
inline int through(NodeKind kind, int s, bool crossing_straight = true) {
  if (kind == NodeKind::Crossing && crossing_straight) {
    static const int m[4] = {UOut, OOut, OIn, UIn};
    return m[s];
  }
  if (kind == NodeKind::TraceB) {
    static const int m[4] = {OIn, UIn, UOut, OOut};
    return m[s];
  }
  static const int m[4] = {OOut, UOut, UIn, OIn};
  return m[s];
}

}  // namespace detail

/// Parity of the number of orientation reversals (type-B trace passages)
/// met walking from the over-pass of a crossing to its under-pass.
inline Parity magnetic_parity(const TraceDiagram& td, std::size_t index) {
  using namespace detail;
  const int c = static_cast<int>(td.crossing_node(index));
  const Incidence inc(td);
  int reversals = 0;
  auto [k, s] = inc.cross_edge(td, c, OOut);
  std::size_t guard = 0;
  while (k != c) {
    if (k < 0) throw std::invalid_argument("open diagram has no magnetic parity");
    if (++guard > 4 * td.nodes.size() + 4) throw std::logic_error("walk did not close");
    const auto kind = td.nodes[k].kind;
    if (kind == NodeKind::TraceB) ++reversals;
    std::tie(k, s) = inc.cross_edge(td, k, through(kind, s));
  }
  if (s == OIn || s == OOut) return Parity::MultiComponent;
  return reversals % 2 ? Parity::Odd : Parity::Even;
}

/// True when repeated kink removal deletes every crossing of the
/// trace-deleted diagram.
inline bool ri_reducible(const TraceDiagram& td) {
  using namespace detail;
  const Incidence inc(td);
  std::vector<bool> removed(td.nodes.size(), false);
  std::size_t left = td.crossing_count();
  bool progress = true;
  while (left > 0 && progress) {
    progress = false;
    for (std::size_t c = 0; c < td.nodes.size(); ++c) {
      if (td.nodes[c].kind != NodeKind::Crossing || removed[c]) continue;
      bool kink = false;
      for (int start = 0; start < 4 && !kink; ++start) {
        auto [k, s] = inc.cross_edge(td, static_cast<int>(c), start);
        std::size_t guard = 0;
        while (k >= 0 && k != static_cast<int>(c) && ++guard <= 4 * td.nodes.size()) {
          if (td.nodes[k].kind == NodeKind::Crossing && !removed[k]) break;
          std::tie(k, s) = inc.cross_edge(td, k, through(td.nodes[k].kind, s));
        }
        kink = k == static_cast<int>(c);
      }
      if (kink) {
        removed[c] = true;
        --left;
        progress = true;
      }
    }
  }
  return left == 0;
}

/// δ^k w^(n-p) Π φ(c) for diagrams whose trace-deleted curve is an unlink
/// removable by kinks alone.
inline RingElement evaluate_by_parity(const TraceDiagram& td, const BiquandleBracket& beta) {
  if (!ri_reducible(td)) throw NotRIReducible("trace-deleted diagram is not reducible by Reidemeister I moves");
  RingElement prod = beta.one();
  const auto& d = beta.delta();
  for (std::size_t i = 0; i < td.crossing_count(); ++i) {
    const auto& n = td.nodes[td.crossing_node(i)];
    const auto par = magnetic_parity(td, i);
    if (par == Parity::MultiComponent)
      throw MultiComponentCrossing("crossing " + std::to_string(i + 1) + " joins two components");
    const auto p = crossing_pair(n.sign, slot_colors(n, td.colors));
    const auto& a = beta.coeff(Smoothing::A, n.sign, p);
    const auto& b = beta.coeff(Smoothing::B, n.sign, p);
    prod *= par == Parity::Odd ? a + d * b : d * a + b;
  }
  const int k = detail::component_count(td, true);
  return d.pow(k) * beta.w().pow(detail::sign_balance(td, true)) * prod;
}

/// Recursive expansion that stops as soon as the parity formula applies.
inline RingElement evaluate_fast(const TraceDiagram& td, const BiquandleBracket& beta) {
  const std::size_t c = td.crossing_count();
  if (c == 0) return evaluate_crossingless(td, beta);
  if (ri_reducible(td)) {
    bool single = true;
    for (std::size_t i = 0; i < c && single; ++i) single = magnetic_parity(td, i) != Parity::MultiComponent;
    if (single) return evaluate_by_parity(td, beta);
  }
  RingElement total = beta.zero();
  for (Smoothing s : {Smoothing::A, Smoothing::B}) {
    auto [coef, next] = smooth_crossing(td, 0, s, beta);
    total += coef * evaluate_fast(next, beta);
  }
  return total;
}

/// Colorings of a (closed) trace diagram compatible with the recorded
/// trace pairs, in lexicographic order. Existing colors are ignored.
inline std::vector<Coloring> enumerate_trace_colorings(const TraceDiagram& td, const Biquandle& X) {
  std::vector<detail::ColoringSolver::Node> cons;
  std::vector<int> fixed(td.edge_count(), -1);
  for (const auto& n : td.nodes) {
    if (n.kind == NodeKind::Marker) continue;
    cons.push_back({n.sign, n.u_in - 1, n.o_in - 1, n.o_out - 1, n.u_out - 1});
  }
  detail::ColoringSolver solver(X, cons, td.edge_count());
  std::vector<Coloring> out;
  for (auto& arcs : solver.solve(fixed)) {
    Coloring c{arcs, std::vector<int>(td.free_loops, 0)};
    bool ok = true;
    for (const auto& n : td.nodes) {
      const auto sc = slot_colors(n, c);
      if (n.kind == NodeKind::Marker && !(sc.u_in == sc.o_out && sc.o_in == sc.u_out)) ok = false;
      if (n.is_trace() && !(crossing_pair(n.sign, sc) == n.pair)) ok = false;
    }
    if (!ok) continue;
    while (true) {
      out.push_back(c);
      int k = td.free_loops - 1;
      while (k >= 0 && c.loops[k] == X.size() - 1) c.loops[k--] = 0;
      if (k < 0) break;
      ++c.loops[k];
    }
  }
  return out;
}

/// Diagram lines as in the diagram format plus
///   traceA <+|-> ui@oo oi@uo x y
///   traceB <+|-> sink(ui,oi) source(oo,uo) x y
///   marker ui@oo oi@uo
///   colors c1 ... cm          (optional; 1-indexed, one per edge)
///   loopcolors c1 ... ck      (optional)
/// A node's slots are listed so that u_in, o_in, o_out, u_out are explicit.
inline TraceDiagram parse_trace_diagram(const std::string& txt) {
  TraceDiagram td;
  bool saw_colors = false, saw_loop_colors = false, saw_loops = false;
  std::vector<int> loop_colors;
  for (const auto& ln : text::content_lines(txt)) {
    auto toks = text::split_tokens(ln);
    const std::string& head = toks[0].value;
    auto num = [&](const text::Token& t) { return static_cast<int>(text::parse_int(t, ln.number, t.column)); };
    auto split_pair = [&](const text::Token& t, char sep, const std::string& prefix) {
      std::string v = t.value;
      if (!prefix.empty()) {
        if (v.rfind(prefix + "(", 0) != 0 || v.back() != ')')
          throw ParseError("expected " + prefix + "(a,b)", ln.number, t.column);
        v = v.substr(prefix.size() + 1, v.size() - prefix.size() - 2);
      }
      const auto at = v.find(sep);
      if (at == std::string::npos) throw ParseError(std::string("expected a '") + sep + "' pair", ln.number, t.column);
      text::Token a{v.substr(0, at), t.column}, b{v.substr(at + 1), t.column};
      return std::pair<int, int>{num(a), num(b)};
    };
    auto sign_of = [&](const text::Token& t) {
      if (t.value == "+") return 1;
      if (t.value == "-") return -1;
      throw ParseError("expected '+' or '-'", ln.number, t.column);
    };
    auto color = [&](const text::Token& t) {
      const int v = num(t);
      if (v < 1) throw ParseError("colors are 1-indexed", ln.number, t.column);
      return v - 1;
    };
    if (head == "+" || head == "-") {
      if (toks.size() != 5) throw ParseError("crossing line needs a sign and 4 edge ids", ln.number);
      td.nodes.push_back({NodeKind::Crossing, sign_of(toks[0]), num(toks[1]), num(toks[2]), num(toks[3]),
                          num(toks[4]), {}});
    } else if (head == "traceA") {
      if (toks.size() != 6) throw ParseError("expected 'traceA <sign> ui@oo oi@uo x y'", ln.number);
      auto [ui, oo] = split_pair(toks[2], '@', "");
      auto [oi, uo] = split_pair(toks[3], '@', "");
      td.nodes.push_back({NodeKind::TraceA, sign_of(toks[1]), ui, oi, oo, uo, {color(toks[4]), color(toks[5])}});
    } else if (head == "traceB") {
      if (toks.size() != 6) throw ParseError("expected 'traceB <sign> sink(ui,oi) source(oo,uo) x y'", ln.number);
      auto [ui, oi] = split_pair(toks[2], ',', "sink");
      auto [oo, uo] = split_pair(toks[3], ',', "source");
      td.nodes.push_back({NodeKind::TraceB, sign_of(toks[1]), ui, oi, oo, uo, {color(toks[4]), color(toks[5])}});
    } else if (head == "marker") {
      if (toks.size() != 3) throw ParseError("expected 'marker ui@oo oi@uo'", ln.number);
      auto [ui, oo] = split_pair(toks[1], '@', "");
      auto [oi, uo] = split_pair(toks[2], '@', "");
      td.nodes.push_back({NodeKind::Marker, 1, ui, oi, oo, uo, {}});
    } else if (head == "loops") {
      if (saw_loops || toks.size() != 2) throw ParseError("expected a single 'loops k'", ln.number);
      saw_loops = true;
      td.free_loops = num(toks[1]);
      if (td.free_loops < 0) throw ParseError("loop count must be nonnegative", ln.number, toks[1].column);
    } else if (head == "colors") {
      if (saw_colors) throw ParseError("duplicate colors line", ln.number);
      saw_colors = true;
      for (std::size_t i = 1; i < toks.size(); ++i) td.colors.arcs.push_back(color(toks[i]));
    } else if (head == "loopcolors") {
      if (saw_loop_colors) throw ParseError("duplicate loopcolors line", ln.number);
      saw_loop_colors = true;
      for (std::size_t i = 1; i < toks.size(); ++i) loop_colors.push_back(color(toks[i]));
    } else {
      throw ParseError("unknown line kind '" + head + "'", ln.number, toks[0].column);
    }
    for (const auto& n : td.nodes)
      if (std::min({n.u_in, n.o_in, n.o_out, n.u_out}) < 1) throw ParseError("edge ids must be positive", ln.number);
  }
  td.colors.loops = loop_colors;
  if (saw_colors && static_cast<int>(td.colors.arcs.size()) != td.edge_count())
    throw ParseError("colors line must list one color per edge");
  if (saw_loop_colors && static_cast<int>(loop_colors.size()) != td.free_loops)
    throw ParseError("loopcolors line must list one color per free loop");
  return td;
}

inline bool has_colors(const TraceDiagram& td) {
  return static_cast<int>(td.colors.arcs.size()) == td.edge_count() &&
         static_cast<int>(td.colors.loops.size()) == td.free_loops;
}

/// The underlying link diagram of a trace diagram without traces or markers.
inline OrientedDiagram to_oriented_diagram(const TraceDiagram& td) {
  std::vector<Crossing> cs;
  for (const auto& n : td.nodes) {
    if (n.kind != NodeKind::Crossing) throw std::invalid_argument("diagram still has traces or markers");
    cs.push_back({n.sign, n.u_in, n.o_in, n.o_out, n.u_out});
  }
  return OrientedDiagram(cs, td.free_loops);
}

}  // namespace tracebracket
