// Biquandle brackets: verification, state sums, invariants, classification.
#pragma once

#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "tracebracket/biquandle.hpp"
#include "tracebracket/coloring.hpp"
#include "tracebracket/diagram.hpp"
#include "tracebracket/ring.hpp"

namespace tracebracket {

using CoeffTable = std::vector<std::vector<RingElement>>;

/// Raw [A|B] tables as read from a file, before verification.
struct BracketTables {
  RingDescriptor ring = RingDescriptor::mod(2);
  CoeffTable A;
  CoeffTable B;
};

struct BracketCheck;
class BiquandleBracket;
BracketCheck verify_bracket(const Biquandle& X, const BracketTables& t);

class BiquandleBracket {
 public:
  const Biquandle& biquandle() const { return X_; }
  const RingDescriptor& ring() const { return ring_; }
  const RingElement& A(int x, int y) const { return A_[x][y]; }
  const RingElement& B(int x, int y) const { return B_[x][y]; }
  const CoeffTable& A_table() const { return A_; }
  const CoeffTable& B_table() const { return B_; }
  const RingElement& delta() const { return delta_; }
  const RingElement& w() const { return w_; }

  /// Coefficient of a smoothing at a crossing of the given sign and pair;
  /// negative crossings use the inverses.
  const RingElement& coeff(Smoothing s, int sign, ColorPair p) const {
    if (s == Smoothing::A) return sign > 0 ? A_[p.x][p.y] : A_inv_[p.x][p.y];
    return sign > 0 ? B_[p.x][p.y] : B_inv_[p.x][p.y];
  }

  RingElement one() const { return RingElement::one(ring_); }
  RingElement zero() const { return RingElement::zero(ring_); }

 private:
  friend BracketCheck verify_bracket(const Biquandle& X, const BracketTables& t);

  BiquandleBracket(Biquandle X, RingDescriptor ring, CoeffTable A, CoeffTable B, RingElement delta,
                   RingElement w)
      : X_(std::move(X)), ring_(std::move(ring)), A_(std::move(A)), B_(std::move(B)),
        delta_(std::move(delta)), w_(std::move(w)) {
    A_inv_ = A_;
    B_inv_ = B_;
    for (auto& row : A_inv_)
      for (auto& e : row) e = e.inverse();
    for (auto& row : B_inv_)
      for (auto& e : row) e = e.inverse();
  }

  Biquandle X_;
  RingDescriptor ring_;
  CoeffTable A_, B_, A_inv_, B_inv_;
  RingElement delta_, w_;
};

struct BracketViolation {
  std::string condition;  // "delta", "w", "iii.1" .. "iii.5"
  std::vector<int> witness;
  std::string lhs;
  std::string rhs;
};

struct BracketCheck {
  std::optional<BiquandleBracket> bracket;
  std::vector<BracketViolation> violations;
  bool ok() const { return bracket.has_value(); }
};

namespace detail {

inline void require_shape(const Biquandle& X, const BracketTables& t) {
  const std::size_t n = static_cast<std::size_t>(X.size());
  auto check = [&](const CoeffTable& T, const char* name) {
    if (T.size() != n) throw std::invalid_argument(std::string(name) + " table has wrong size for the biquandle");
    for (const auto& row : T) {
      if (row.size() != n) throw std::invalid_argument(std::string(name) + " table is not square");
      for (const auto& e : row)
        if (!(e.ring() == t.ring)) throw RingMismatch("bracket entry in the wrong ring");
    }
  };
  check(t.A, "A");
  check(t.B, "B");
}

}  // namespace detail

/// Checks that all entries are units, that delta and w are well defined and
/// that the five condition-(iii) equations hold on every triple.
inline BracketCheck verify_bracket(const Biquandle& X, const BracketTables& t) {
  detail::require_shape(X, t);
  const int n = X.size();
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      if (!t.A[x][y].is_unit())
        throw NotAUnit("A[" + std::to_string(x + 1) + "," + std::to_string(y + 1) + "] = " + t.A[x][y].to_string() +
                       " is not a unit");
      if (!t.B[x][y].is_unit())
        throw NotAUnit("B[" + std::to_string(x + 1) + "," + std::to_string(y + 1) + "] = " + t.B[x][y].to_string() +
                       " is not a unit");
    }
  }
  BracketCheck out;
  auto delta_at = [&](int x, int y) {
    return -(t.A[x][y].inverse() * t.B[x][y]) - t.A[x][y] * t.B[x][y].inverse();
  };
  auto w_at = [&](int x) { return -(t.A[x][x] * t.A[x][x] * t.B[x][x].inverse()); };
  const RingElement delta = delta_at(0, 0);
  const RingElement w = w_at(0);
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      auto d = delta_at(x, y);
      if (!(d == delta)) out.violations.push_back({"delta", {x, y}, d.to_string(), delta.to_string()});
    }
    auto wx = w_at(x);
    if (!(wx == w)) out.violations.push_back({"w", {x}, wx.to_string(), w.to_string()});
  }

  auto U = [&](int a, int b) { return X.under(a, b); };
  auto O = [&](int a, int b) { return X.over(a, b); };
  const auto& A = t.A;
  const auto& B = t.B;
  for (int x = 0; x < n; ++x) {
    for (int y = 0; y < n; ++y) {
      for (int z = 0; z < n; ++z) {
        // left: (x,y), (y,z), (x^y, z_y); right: (x,z), (y_x, z_x), (x^z, y^z)
        const int p = U(x, y), q = O(z, y);
        const int r1 = O(y, x), r2 = O(z, x);
        const int s1 = U(x, z), s2 = U(y, z);
        const auto& Axy = A[x][y];
        const auto& Bxy = B[x][y];
        const auto& Ayz = A[y][z];
        const auto& Byz = B[y][z];
        const auto& Apq = A[p][q];
        const auto& Bpq = B[p][q];
        const auto& Axz = A[x][z];
        const auto& Bxz = B[x][z];
        const auto& Ar = A[r1][r2];
        const auto& Br = B[r1][r2];
        const auto& As = A[s1][s2];
        const auto& Bs = B[s1][s2];
        const RingElement eq[5][2] = {
            {Axy * Ayz * Apq, Axz * Ar * As},
            {Axy * Byz * Bpq, Bxz * Br * As},
            {Bxy * Ayz * Bpq, Bxz * Ar * Bs},
            {Axy * Ayz * Bpq, Axz * Br * As + Axz * Ar * Bs + delta * Axz * Br * Bs + Bxz * Br * Bs},
            {Bxy * Ayz * Apq + Axy * Byz * Apq + delta * Bxy * Byz * Apq + Bxy * Byz * Bpq, Bxz * Ar * As},
        };
        for (int k = 0; k < 5; ++k)
          if (!(eq[k][0] == eq[k][1]))
            out.violations.push_back(
                {"iii." + std::to_string(k + 1), {x, y, z}, eq[k][0].to_string(), eq[k][1].to_string()});
      }
    }
  }
  if (out.violations.empty()) out.bracket = BiquandleBracket(X, t.ring, t.A, t.B, delta, w);
  return out;
}

/// Throws with the first violation if the tables are not a bracket.
inline BiquandleBracket make_bracket(const Biquandle& X, const BracketTables& t) {
  auto chk = verify_bracket(X, t);
  if (!chk.ok()) {
    const auto& v = chk.violations.front();
    throw std::invalid_argument("not a biquandle bracket: condition " + v.condition + " fails");
  }
  return *chk.bracket;
}

/// β = w^(n-p) Σ_states Π C_j δ^loops. States run as a binary counter over
/// crossings with A = 0, B = 1; the first crossing is the low bit.
inline RingElement state_sum(const OrientedDiagram& d, const Coloring& col, const BiquandleBracket& beta) {
  if (!validate_coloring(d, beta.biquandle(), col)) throw std::invalid_argument("invalid coloring");
  const std::size_t c = d.crossing_count();
  if (c >= 63) throw std::invalid_argument("too many crossings for state enumeration");
  std::vector<ColorPair> pairs;
  for (const auto& x : d.crossings()) pairs.push_back(crossing_pair(x.sign, slot_colors(x, col)));
  std::vector<RingElement> dpow{beta.one()};
  RingElement total = beta.zero();
  SmoothingState st(c, Smoothing::A);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << c); ++mask) {
    RingElement term = beta.one();
    for (std::size_t i = 0; i < c; ++i) {
      st[i] = (mask >> i) & 1U ? Smoothing::B : Smoothing::A;
      term *= beta.coeff(st[i], d.crossing(i).sign, pairs[i]);
    }
    const auto k = static_cast<std::size_t>(count_state_loops(d, st));
    while (dpow.size() <= k) dpow.push_back(dpow.back() * beta.delta());
    total += term * dpow[k];
  }
  const auto [p, n] = writhe_counts(d);
  return total * beta.w().pow(n - p);
}

/// Multiset of ring values, keyed in the ring's total order.
struct InvariantResult {
  std::map<RingElement, std::size_t> multiset;

  std::size_t total() const {
    std::size_t s = 0;
    for (const auto& kv : multiset) s += kv.second;
    return s;
  }

  /// `{1:2, 3:2}`
  std::string multiset_string() const {
    std::string out = "{";
    bool first = true;
    for (const auto& [e, m] : multiset) {
      if (!first) out += ", ";
      first = false;
      out += e.to_string() + ":" + std::to_string(m);
    }
    return out + "}";
  }

  /// `2u + 2u^3`. Laurent exponents are parenthesized when compound.
  std::string polynomial_string() const {
    if (multiset.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [e, m] : multiset) {
      if (!first) out += " + ";
      first = false;
      std::string ex = e.to_string();
      const bool simple = ex.find_first_of(" *-") == std::string::npos;
      std::string term;
      if (ex == "0") {
        term = std::to_string(m);
      } else {
        term = (m == 1 ? "" : std::to_string(m)) + "u";
        if (ex != "1") term += "^" + (simple ? ex : "(" + ex + ")");
      }
      out += term;
    }
    return out;
  }
};

inline InvariantResult bracket_invariant(const OrientedDiagram& d, const BiquandleBracket& beta) {
  InvariantResult r;
  for (const auto& col : enumerate_colorings(d, beta.biquandle())) ++r.multiset[state_sum(d, col, beta)];
  return r;
}

struct Witness {
  std::vector<int> elements;
  std::string detail;
};

struct AdequacyClass {
  bool over_adequate = false;
  bool under_adequate = false;
  bool passthrough = false;
  std::optional<Witness> over_failure;
  std::optional<Witness> under_failure;
  std::optional<Witness> passthrough_failure;

  bool adequate() const { return over_adequate && under_adequate; }
  std::string label() const {
    if (adequate()) return "adequate";
    if (over_adequate) return "over";
    if (under_adequate) return "under";
    return "neither";
  }
};

inline AdequacyClass classify_adequacy(const BiquandleBracket& beta) {
  const auto& X = beta.biquandle();
  const int n = X.size();
  auto U = [&](int a, int b) { return X.under(a, b); };
  auto O = [&](int a, int b) { return X.over(a, b); };
  auto A = [&](int a, int b) -> const RingElement& { return beta.A(a, b); };
  auto B = [&](int a, int b) -> const RingElement& { return beta.B(a, b); };
  AdequacyClass c;
  for (int x = 0; x < n && !c.over_failure; ++x) {
    for (int y = 0; y < n && !c.over_failure; ++y) {
      for (int z = 0; z < n && !c.over_failure; ++z) {
        if (!(A(y, z) == A(U(y, x), U(z, x)))) {
          c.over_failure = Witness{{x, y, z}, "A[y,z] != A[y^x,z^x]"};
          break;
        }
        const auto e1 = A(y, z) * B(U(x, y), O(z, y));
        const auto e2 = B(x, z) * A(O(y, x), O(z, x));
        const auto e3 = A(x, z) * B(O(y, x), O(z, x));
        const auto e4 = B(y, z) * A(U(x, y), O(z, y));
        if (!(e1 == e2 && e2 == e3 && e3 == e4))
          c.over_failure = Witness{{x, y, z}, "A[y,z]B[x^y,z_y] = B[x,z]A[y_x,z_x] = A[x,z]B[y_x,z_x] = B[y,z]A[x^y,z_y] fails"};
      }
    }
  }
  for (int x = 0; x < n && !c.under_failure; ++x) {
    for (int y = 0; y < n && !c.under_failure; ++y) {
      for (int z = 0; z < n && !c.under_failure; ++z) {
        if (!(A(y, z) == A(O(y, x), O(z, x)))) {
          c.under_failure = Witness{{x, y, z}, "A[y,z] != A[y_x,z_x]"};
          break;
        }
        const auto e1 = A(x, y) * B(U(x, y), O(z, y));
        const auto e2 = B(x, z) * A(U(x, z), U(y, z));
        const auto e3 = A(x, z) * B(U(x, z), U(y, z));
        const auto e4 = B(x, y) * A(U(x, y), O(z, y));
        if (!(e1 == e2 && e2 == e3 && e3 == e4))
          c.under_failure = Witness{{x, y, z}, "A[x,y]B[x^y,z_y] = B[x,z]A[x^z,y^z] = A[x,z]B[x^z,y^z] = B[x,y]A[x^y,z_y] fails"};
      }
    }
  }
  const auto one = beta.one();
  for (int x = 0; x < n && !c.passthrough_failure; ++x) {
    const int y = X.diagonal(x);
    const auto l = A(x, x) * A(x, x) * B(y, y) * B(y, y);
    const auto r = A(y, y) * A(y, y) * B(x, x) * B(x, x);
    if (!(l == one && r == one))
      c.passthrough_failure = Witness{{x, y}, "A[x,x]^2 B[y,y]^2 = A[y,y]^2 B[x,x]^2 = 1 fails"};
  }
  c.over_adequate = !c.over_failure;
  c.under_adequate = !c.under_failure;
  c.passthrough = !c.passthrough_failure;
  return c;
}

struct SkeinCoefficients {
  RingElement c_switch;
  RingElement c_smooth;
};

/// [L+] = c_switch [L-] + c_smooth [L0] at a crossing colored (x, x).
inline SkeinCoefficients homflypt_coefficients(const BiquandleBracket& beta, int x) {
  const auto& a = beta.A(x, x);
  const auto& b = beta.B(x, x);
  return {a.pow(-4) * b.pow(4), a.pow(-3) * b.pow(3) - a.pow(-1) * b};
}

struct SkeinCheck {
  bool holds;
  RingElement plus, minus, smooth;
  SkeinCoefficients coefficients;
};

/// Evaluates both sides of the skein relation at one crossing whose color
/// pair is (x, x). The switched and smoothed diagrams inherit the coloring.
inline SkeinCheck skein_identity_check(const OrientedDiagram& d, const Coloring& col, const BiquandleBracket& beta,
                                       std::size_t index) {
  const auto& X = beta.biquandle();
  if (index >= d.crossing_count()) throw std::out_of_range("crossing index out of range");
  if (!validate_coloring(d, X, col)) throw std::invalid_argument("invalid coloring");
  const auto& c = d.crossing(index);
  const auto pair = crossing_pair(c.sign, slot_colors(c, col));
  if (pair.x != pair.y)
    throw std::domain_error("crossing " + std::to_string(index + 1) + " is not monochromatic (pair " +
                            std::to_string(pair.x + 1) + "," + std::to_string(pair.y + 1) + ")");
  const OrientedDiagram plus = c.sign > 0 ? d : switch_crossing(d, index);
  const OrientedDiagram minus = c.sign > 0 ? switch_crossing(d, index) : d;
  const auto sm = oriented_smoothing_map(d, index);
  Coloring sc;
  sc.arcs.assign(sm.diagram.semiarc_count(), -1);
  for (int id = 1; id <= d.semiarc_count(); ++id) {
    const int to = sm.renumber[id];
    if (to == 0) continue;
    int& slot = sc.arcs[to - 1];
    if (slot != -1 && slot != col.arc(id)) throw std::logic_error("smoothing merged semiarcs of different colors");
    slot = col.arc(id);
  }
  sc.loops = col.loops;
  for (int id : sm.closed) sc.loops.push_back(col.arc(id));

  SkeinCheck r{false, state_sum(plus, col, beta), state_sum(minus, col, beta), state_sum(sm.diagram, sc, beta),
               homflypt_coefficients(beta, pair.x)};
  r.holds = r.plus == r.coefficients.c_switch * r.minus + r.coefficients.c_smooth * r.smooth;
  return r;
}

/// File: `ring mod <n>` or `ring laurent [v1 v2]`, then n rows of 2n entries
/// [A | B]. A lone `|` token between the blocks is allowed.
inline BracketTables parse_bracket(const std::string& txt) {
  auto lines = text::content_lines(txt);
  if (lines.empty()) throw ParseError("empty bracket file");
  auto head = text::split_tokens(lines[0]);
  BracketTables t;
  if (head[0].value != "ring" || head.size() < 2) throw ParseError("expected 'ring mod <n>' or 'ring laurent'", lines[0].number);
  if (head[1].value == "mod") {
    if (head.size() != 3) throw ParseError("expected 'ring mod <n>'", lines[0].number);
    const long long m = text::parse_int(head[2], lines[0].number, head[2].column);
    if (m < 2) throw ParseError("modulus must be at least 2", lines[0].number, head[2].column);
    t.ring = RingDescriptor::mod(m);
  } else if (head[1].value == "laurent") {
    if (head.size() == 2) {
      t.ring = RingDescriptor::laurent();
    } else if (head.size() == 4) {
      try {
        t.ring = RingDescriptor::laurent(head[2].value, head[3].value);
      } catch (const std::invalid_argument& e) {
        throw ParseError(e.what(), lines[0].number);
      }
    } else {
      throw ParseError("expected 'ring laurent [v1 v2]'", lines[0].number);
    }
  } else {
    throw ParseError("unknown ring kind '" + head[1].value + "'", lines[0].number, head[1].column);
  }
  const std::size_t n = lines.size() - 1;
  if (n == 0) throw ParseError("bracket has no rows", lines[0].number);
  for (std::size_t r = 0; r < n; ++r) {
    const auto& ln = lines[r + 1];
    std::vector<text::Token> toks;
    for (auto& tk : text::split_tokens(ln))
      if (tk.value != "|") toks.push_back(tk);
    if (toks.size() != 2 * n)
      throw ParseError("row has " + std::to_string(toks.size()) + " entries, expected " + std::to_string(2 * n),
                       ln.number);
    std::vector<RingElement> a, b;
    for (std::size_t c = 0; c < 2 * n; ++c) {
      RingElement e = RingElement::zero(t.ring);
      try {
        e = parse_ring_element(t.ring, toks[c].value);
      } catch (const ParseError& err) {
        throw ParseError(err.what(), ln.number, toks[c].column);
      } catch (const std::overflow_error& err) {
        throw ParseError(err.what(), ln.number, toks[c].column);
      }
      (c < n ? a : b).push_back(e);
    }
    t.A.push_back(a);
    t.B.push_back(b);
  }
  return t;
}

inline std::string serialize_bracket(const RingDescriptor& ring, const CoeffTable& A, const CoeffTable& B) {
  std::ostringstream os;
  if (ring.is_mod()) {
    os << "ring mod " << ring.modulus() << "\n";
  } else {
    os << "ring laurent";
    if (ring.first_var() != "A" || ring.second_var() != "B") os << " " << ring.first_var() << " " << ring.second_var();
    os << "\n";
  }
  auto entry = [](const RingElement& e) {
    std::string s = e.to_string();
    std::erase(s, ' ');
    return s;
  };
  for (std::size_t r = 0; r < A.size(); ++r) {
    for (std::size_t c = 0; c < A.size(); ++c) os << (c ? " " : "") << entry(A[r][c]);
    os << " |";
    for (std::size_t c = 0; c < B.size(); ++c) os << " " << entry(B[r][c]);
    os << "\n";
  }
  return os.str();
}

inline std::string serialize_bracket(const BiquandleBracket& b) {
  return serialize_bracket(b.ring(), b.A_table(), b.B_table());
}

}  // namespace tracebracket
