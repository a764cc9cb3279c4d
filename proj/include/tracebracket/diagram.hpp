// Oriented link diagrams as signed crossing records.
#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "tracebracket/ring.hpp"
#include "tracebracket/text.hpp"

namespace tracebracket {

/// Semiarc ids are 1-based. The under strand runs u_in -> u_out, the over
/// strand o_in -> o_out.
struct Crossing {
  int sign = 1;
  int u_in = 0;
  int o_in = 0;
  int o_out = 0;
  int u_out = 0;

  bool operator==(const Crossing&) const = default;
};

enum class Smoothing { A = 0, B = 1 };

using SmoothingState = std::vector<Smoothing>;

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) {
      parent_[a] = parent_[parent_[a]];
      a = parent_[a];
    }
    return a;
  }
  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[std::max(a, b)] = std::min(a, b);
    return true;
  }
  std::size_t size() const { return parent_.size(); }

 private:
  std::vector<std::size_t> parent_;
};

struct DiagramReport {
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

class OrientedDiagram {
 public:
  OrientedDiagram() = default;
  OrientedDiagram(std::vector<Crossing> crossings, int free_loops = 0)
      : crossings_(std::move(crossings)), free_loops_(free_loops) {
    if (free_loops_ < 0) throw std::invalid_argument("free loop count must be nonnegative");
    for (const auto& c : crossings_) {
      if (c.sign != 1 && c.sign != -1) throw std::invalid_argument("crossing sign must be +1 or -1");
      semiarcs_ = std::max({semiarcs_, c.u_in, c.o_in, c.o_out, c.u_out});
    }
  }

  const std::vector<Crossing>& crossings() const { return crossings_; }
  const Crossing& crossing(std::size_t i) const { return crossings_.at(i); }
  std::size_t crossing_count() const { return crossings_.size(); }
  /// Largest semiarc id; equals the semiarc count on valid diagrams.
  int semiarc_count() const { return semiarcs_; }
  int free_loops() const { return free_loops_; }

  bool operator==(const OrientedDiagram&) const = default;

 private:
  std::vector<Crossing> crossings_;
  int free_loops_ = 0;
  int semiarcs_ = 0;
};

inline DiagramReport validate_diagram(const OrientedDiagram& d) {
  DiagramReport rep;
  const int m = d.semiarc_count();
  std::vector<int> born(m + 1, 0), dies(m + 1, 0);
  for (std::size_t i = 0; i < d.crossing_count(); ++i) {
    const auto& c = d.crossing(i);
    for (int id : {c.u_in, c.o_in, c.o_out, c.u_out}) {
      if (id < 1) {
        rep.problems.push_back("crossing " + std::to_string(i + 1) + ": semiarc id " + std::to_string(id) +
                               " is not positive");
        return rep;
      }
    }
    ++dies[c.u_in];
    ++dies[c.o_in];
    ++born[c.o_out];
    ++born[c.u_out];
  }
  for (int id = 1; id <= m; ++id) {
    if (born[id] == 0 && dies[id] == 0) {
      rep.problems.push_back("semiarc " + std::to_string(id) + " missing");
      continue;
    }
    if (born[id] != 1)
      rep.problems.push_back("semiarc " + std::to_string(id) + " appears " + std::to_string(born[id]) +
                             " times as an output");
    if (dies[id] != 1)
      rep.problems.push_back("semiarc " + std::to_string(id) + " appears " + std::to_string(dies[id]) +
                             " times as an input");
  }
  return rep;
}

inline void require_valid(const OrientedDiagram& d) {
  auto rep = validate_diagram(d);
  if (!rep.ok()) throw std::invalid_argument("invalid diagram: " + rep.problems.front());
}

/// (positive, negative) crossing counts.
inline std::pair<int, int> writhe_counts(const OrientedDiagram& d) {
  int p = 0, n = 0;
  for (const auto& c : d.crossings()) (c.sign > 0 ? p : n)++;
  return {p, n};
}

/// Circles left after smoothing every crossing per the state.
/// A joins u_in-o_out and o_in-u_out; B joins u_in-o_in and u_out-o_out.
inline int count_state_loops(const OrientedDiagram& d, const SmoothingState& s) {
  if (s.size() != d.crossing_count()) throw std::invalid_argument("state length does not match crossing count");
  const int m = d.semiarc_count();
  UnionFind uf(m + 1);
  int comps = m;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& c = d.crossing(i);
    if (s[i] == Smoothing::A) {
      comps -= uf.unite(c.u_in, c.o_out);
      comps -= uf.unite(c.o_in, c.u_out);
    } else {
      comps -= uf.unite(c.u_in, c.o_in);
      comps -= uf.unite(c.u_out, c.o_out);
    }
  }
  return comps + d.free_loops();
}

/// Negates the sign and swaps the under/over roles of one crossing.
inline OrientedDiagram switch_crossing(const OrientedDiagram& d, std::size_t index) {
  if (index >= d.crossing_count()) throw std::out_of_range("crossing index out of range");
  auto cs = d.crossings();
  auto& c = cs[index];
  c = Crossing{-c.sign, c.o_in, c.u_in, c.u_out, c.o_out};
  return OrientedDiagram(cs, d.free_loops());
}

/// Result of removing a crossing by surgery, with the old-to-new id map
/// (0 where a semiarc became part of a free loop).
struct Surgery {
  OrientedDiagram diagram;
  std::vector<int> renumber;
  std::vector<int> closed;  // one old id per newly created free loop, in loop order
};

/// Oriented smoothing: u_in joins o_out, o_in joins u_out. Surviving
/// semiarcs are renumbered by their smallest old id.
inline Surgery oriented_smoothing_map(const OrientedDiagram& d, std::size_t index) {
  if (index >= d.crossing_count()) throw std::out_of_range("crossing index out of range");
  const int m = d.semiarc_count();
  const auto& x = d.crossing(index);
  UnionFind uf(m + 1);
  uf.unite(x.u_in, x.o_out);
  uf.unite(x.o_in, x.u_out);

  std::vector<Crossing> rest;
  for (std::size_t i = 0; i < d.crossing_count(); ++i)
    if (i != index) rest.push_back(d.crossing(i));

  std::set<std::size_t> used;
  for (const auto& c : rest)
    for (int id : {c.u_in, c.o_in, c.o_out, c.u_out}) used.insert(uf.find(id));
  // Roots are class minima, so ordering by root orders by smallest old id.
  std::map<std::size_t, int> fresh;
  for (auto r : used) fresh.emplace(r, static_cast<int>(fresh.size()) + 1);

  std::set<std::size_t> closed;
  for (int id : {x.u_in, x.o_in, x.o_out, x.u_out})
    if (!used.count(uf.find(id))) closed.insert(uf.find(id));

  for (auto& c : rest) {
    c.u_in = fresh.at(uf.find(c.u_in));
    c.o_in = fresh.at(uf.find(c.o_in));
    c.o_out = fresh.at(uf.find(c.o_out));
    c.u_out = fresh.at(uf.find(c.u_out));
  }
  std::vector<int> renumber(m + 1, 0);
  for (int id = 1; id <= m; ++id) {
    auto it = fresh.find(uf.find(id));
    renumber[id] = it == fresh.end() ? 0 : it->second;
  }
  return {OrientedDiagram(rest, d.free_loops() + static_cast<int>(closed.size())), renumber,
          std::vector<int>(closed.begin(), closed.end())};
}

inline OrientedDiagram oriented_smoothing(const OrientedDiagram& d, std::size_t index) {
  return oriented_smoothing_map(d, index).diagram;
}

/// `+ u_in o_in o_out u_out` per crossing; optional `loops k`.
inline OrientedDiagram parse_diagram(const std::string& txt) {
  std::vector<Crossing> cs;
  int loops = 0;
  bool saw_loops = false;
  for (const auto& ln : text::content_lines(txt)) {
    auto toks = text::split_tokens(ln);
    if (toks[0].value == "loops") {
      if (saw_loops) throw ParseError("duplicate loops line", ln.number);
      if (toks.size() != 2) throw ParseError("expected 'loops k'", ln.number);
      saw_loops = true;
      loops = static_cast<int>(text::parse_int(toks[1], ln.number, toks[1].column));
      if (loops < 0) throw ParseError("loop count must be nonnegative", ln.number, toks[1].column);
      continue;
    }
    if (toks[0].value != "+" && toks[0].value != "-")
      throw ParseError("expected '+', '-' or 'loops', got '" + toks[0].value + "'", ln.number, toks[0].column);
    if (toks.size() != 5) throw ParseError("crossing line needs a sign and 4 semiarc ids", ln.number);
    int ids[4];
    for (int k = 0; k < 4; ++k) {
      const long long v = text::parse_int(toks[k + 1], ln.number, toks[k + 1].column);
      if (v < 1) throw ParseError("semiarc ids must be positive", ln.number, toks[k + 1].column);
      ids[k] = static_cast<int>(v);
    }
    cs.push_back({toks[0].value == "+" ? 1 : -1, ids[0], ids[1], ids[2], ids[3]});
  }
  return OrientedDiagram(cs, loops);
}

inline std::string serialize_diagram(const OrientedDiagram& d) {
  std::ostringstream os;
  if (d.free_loops() > 0) os << "loops " << d.free_loops() << "\n";
  for (const auto& c : d.crossings())
    os << (c.sign > 0 ? '+' : '-') << ' ' << c.u_in << ' ' << c.o_in << ' ' << c.o_out << ' ' << c.u_out << "\n";
  return os.str();
}

}  // namespace tracebracket
