#include <cstdlib>
#include <fstream>
#include <iostream>
#include <regex>
#include <sstream>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "tracebracket.hpp"

using nlohmann::json;
using namespace tracebracket;

namespace {

// Malformed input: exit status 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Report {
  std::string command;
  json inputs = json::object();
  json result = json::object();
  json witnesses = json::array();
  std::ostringstream text;
  int status = 0;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Biquandle load_biquandle(const std::string& arg) {
  static const std::regex alex(R"(alexander\(\s*(-?\d+)\s*,\s*(-?\d+)\s*,\s*(-?\d+)\s*\))");
  static const std::regex triv(R"(trivial\(\s*(\d+)\s*\))");
  std::smatch m;
  if (std::regex_match(arg, m, alex)) {
    try {
      return alexander_biquandle(std::stoi(m[1]), std::stoi(m[2]), std::stoi(m[3]));
    } catch (const NotAUnit& e) {
      throw InputError(std::string("alexander biquandle: ") + e.what());
    }
  }
  if (std::regex_match(arg, m, triv)) return Biquandle::trivial(std::stoi(m[1]));
  return parse_biquandle(read_file(arg));
}

json ones(const std::vector<int>& v) {
  json a = json::array();
  for (int x : v) a.push_back(x + 1);
  return a;
}

std::string tuple_string(const std::vector<int>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i] + 1);
  return s + ")";
}

// A biquandle that fails its axioms ends the command with findings.
bool require_biquandle(const Biquandle& X, Report& r) {
  auto rep = verify_biquandle(X);
  for (const auto& v : rep.violations) {
    r.witnesses.push_back({{"kind", "biquandle axiom"}, {"axiom", v.axiom}, {"elements", ones(v.witness)},
                           {"detail", v.detail}});
    r.text << "violation: axiom " << v.axiom;
    if (!v.witness.empty()) r.text << " at " << tuple_string(v.witness);
    r.text << ": " << v.detail << "\n";
  }
  if (!rep.ok()) {
    r.result["ok"] = false;
    r.status = 1;
  }
  return rep.ok();
}

std::optional<BiquandleBracket> load_bracket(const Biquandle& X, const std::string& path, Report& r) {
  auto tables = parse_bracket(read_file(path));
  if (static_cast<int>(tables.A.size()) != X.size())
    throw InputError("bracket has " + std::to_string(tables.A.size()) + " rows but the biquandle has " +
                     std::to_string(X.size()) + " elements");
  BracketCheck chk;
  try {
    chk = verify_bracket(X, tables);
  } catch (const NotAUnit& e) {
    r.witnesses.push_back({{"kind", "not a unit"}, {"detail", e.what()}});
    r.text << "violation: " << e.what() << "\n";
    r.result["ok"] = false;
    r.status = 1;
    return std::nullopt;
  }
  for (const auto& v : chk.violations) {
    r.witnesses.push_back({{"kind", "bracket condition"}, {"condition", v.condition}, {"elements", ones(v.witness)},
                           {"lhs", v.lhs}, {"rhs", v.rhs}});
    r.text << "violation: condition " << v.condition << " at " << tuple_string(v.witness) << ": " << v.lhs
           << " != " << v.rhs << "\n";
  }
  if (!chk.ok()) {
    r.result["ok"] = false;
    r.status = 1;
    return std::nullopt;
  }
  return chk.bracket;
}

std::string coloring_line(const Coloring& c) {
  std::string s;
  for (std::size_t i = 0; i < c.arcs.size(); ++i)
    s += (i ? " " : "") + std::to_string(i + 1) + "=" + std::to_string(c.arcs[i] + 1);
  for (std::size_t i = 0; i < c.loops.size(); ++i)
    s += (s.empty() ? "" : " ") + std::string("loop") + std::to_string(i + 1) + "=" + std::to_string(c.loops[i] + 1);
  return s;
}

json coloring_json(const Coloring& c) { return {{"semiarcs", ones(c.arcs)}, {"loops", ones(c.loops)}}; }

int thread_count() {
  const char* env = std::getenv("TRACEBRACKET_THREADS");
  if (env == nullptr) return 1;
  int n = 1;
  try {
    n = std::stoi(env);
  } catch (...) {
    throw InputError("TRACEBRACKET_THREADS must be an integer");
  }
  if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  return n;
}

std::string block_matrix(const BiquandleBracket& b) {
  std::ostringstream os;
  const int n = b.biquandle().size();
  for (int x = 0; x < n; ++x) {
    os << "[";
    for (int y = 0; y < n; ++y) os << (y ? " " : "") << b.A(x, y).to_string();
    os << " |";
    for (int y = 0; y < n; ++y) os << " " << b.B(x, y).to_string();
    os << "]\n";
  }
  return os.str();
}

json table_json(const CoeffTable& t) {
  json a = json::array();
  for (const auto& row : t) {
    json r = json::array();
    for (const auto& e : row) r.push_back(e.to_string());
    a.push_back(r);
  }
  return a;
}

// ---- subcommands ----

void cmd_verify_biquandle(Report& r, const std::string& bq) {
  r.inputs["biquandle"] = bq;
  auto X = load_biquandle(bq);
  r.result["size"] = X.size();
  if (require_biquandle(X, r)) {
    r.result["ok"] = true;
    r.text << "ok: biquandle with " << X.size() << " elements\n";
  } else {
    r.text << "violations: " << r.witnesses.size() << "\n";
  }
}

void cmd_verify_bracket(Report& r, const std::string& bq, const std::string& br) {
  r.inputs = {{"biquandle", bq}, {"bracket", br}};
  auto X = load_biquandle(bq);
  if (!require_biquandle(X, r)) return;
  auto b = load_bracket(X, br, r);
  if (!b) {
    r.text << "violations: " << r.witnesses.size() << "\n";
    return;
  }
  r.result = {{"ok", true}, {"delta", b->delta().to_string()}, {"w", b->w().to_string()}};
  r.text << "ok\ndelta: " << b->delta().to_string() << "\nw: " << b->w().to_string() << "\n";
}

void cmd_colorings(Report& r, const std::string& dg, const std::string& bq) {
  r.inputs = {{"diagram", dg}, {"biquandle", bq}};
  auto d = parse_diagram(read_file(dg));
  require_valid(d);
  auto X = load_biquandle(bq);
  if (!require_biquandle(X, r)) return;
  auto cols = enumerate_colorings(d, X);
  json arr = json::array();
  for (const auto& c : cols) {
    arr.push_back(coloring_json(c));
    r.text << coloring_line(c) << "\n";
  }
  r.result = {{"count", cols.size()}, {"colorings", arr}};
  r.text << "count: " << cols.size() << "\n";
}

void cmd_invariant(Report& r, const std::string& dg, const std::string& bq, const std::string& br, bool each) {
  r.inputs = {{"diagram", dg}, {"biquandle", bq}, {"bracket", br}};
  auto d = parse_diagram(read_file(dg));
  require_valid(d);
  auto X = load_biquandle(bq);
  if (!require_biquandle(X, r)) return;
  auto b = load_bracket(X, br, r);
  if (!b) return;
  InvariantResult inv;
  json per = json::array();
  for (const auto& c : enumerate_colorings(d, X)) {
    auto v = state_sum(d, c, *b);
    ++inv.multiset[v];
    if (each) {
      per.push_back({{"coloring", coloring_json(c)}, {"value", v.to_string()}});
      r.text << coloring_line(c) << " -> " << v.to_string() << "\n";
    }
  }
  json ms = json::array();
  for (const auto& [v, k] : inv.multiset) ms.push_back({{"value", v.to_string()}, {"count", k}});
  r.result = {{"colorings", inv.total()}, {"multiset", ms}, {"poly", inv.polynomial_string()}};
  if (each) r.result["per_coloring"] = per;
  r.text << "colorings: " << inv.total() << "\nmultiset: " << inv.multiset_string()
         << "\npoly: " << inv.polynomial_string() << "\n";
}

void cmd_classify(Report& r, const std::string& bq, const std::string& br) {
  r.inputs = {{"biquandle", bq}, {"bracket", br}};
  auto X = load_biquandle(bq);
  if (!require_biquandle(X, r)) return;
  auto b = load_bracket(X, br, r);
  if (!b) return;
  auto c = classify_adequacy(*b);
  auto note = [&](const char* what, const std::optional<Witness>& w) {
    if (!w) return;
    r.witnesses.push_back({{"kind", what}, {"elements", ones(w->elements)}, {"detail", w->detail}});
    r.text << what << " fails at " << tuple_string(w->elements) << ": " << w->detail << "\n";
  };
  const auto over = trace_move_family_check(*b, MoveFamily::Over);
  const auto under = trace_move_family_check(*b, MoveFamily::Under);
  r.result = {{"class", c.label()},
              {"over_adequate", c.over_adequate},
              {"under_adequate", c.under_adequate},
              {"passthrough", c.passthrough},
              {"fixture_over", over.holds},
              {"fixture_under", under.holds}};
  r.text << c.label() << "\npassthrough: " << (c.passthrough ? "yes" : "no") << "\n";
  r.text << "move fixtures: over " << (over.holds ? "hold" : "fail") << ", under " << (under.holds ? "hold" : "fail")
         << "\n";
  note("over", c.over_failure);
  note("under", c.under_failure);
  note("passthrough", c.passthrough_failure);
  if (!over.holds) r.text << "over fixture: " << over.detail << "\n";
  if (!under.holds) r.text << "under fixture: " << under.detail << "\n";
}

void cmd_search(Report& r, const std::string& bq, std::int64_t mod, const std::string& cls, std::size_t limit,
                std::optional<std::int64_t> delta) {
  r.inputs = {{"biquandle", bq}, {"mod", mod}, {"class", cls}};
  if (cls != "any" && cls != "adequate" && cls != "over" && cls != "under" && cls != "neither")
    throw InputError("--class must be adequate, over, under, neither or any");
  if (mod < 2) throw InputError("--mod must be at least 2");
  auto X = load_biquandle(bq);
  if (!require_biquandle(X, r)) return;
  SearchSpec spec;
  spec.biquandle = X;
  spec.modulus = mod;
  spec.class_filter = cls;
  if (limit > 0) spec.limit = limit;
  spec.delta = delta;
  spec.threads = thread_count();
  auto found = search_brackets(spec);
  json arr = json::array();
  for (const auto& f : found) {
    arr.push_back({{"A", table_json(f.bracket.A_table())},
                   {"B", table_json(f.bracket.B_table())},
                   {"delta", f.bracket.delta().to_string()},
                   {"w", f.bracket.w().to_string()},
                   {"class", f.adequacy.label()},
                   {"passthrough", f.adequacy.passthrough}});
    r.text << block_matrix(f.bracket) << "class: " << f.adequacy.label() << "  delta: " << f.bracket.delta().to_string()
           << "  w: " << f.bracket.w().to_string() << "  passthrough: " << (f.adequacy.passthrough ? "yes" : "no")
           << "\n\n";
  }
  r.result = {{"count", found.size()}, {"brackets", arr}};
  r.text << "found: " << found.size() << "\n";
}

std::vector<std::size_t> parse_order(const std::string& s, std::size_t n) {
  std::vector<std::size_t> out;
  if (s.empty()) return out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    int v = 0;
    try {
      v = std::stoi(tok);
    } catch (...) {
      throw InputError("--order expects comma-separated crossing numbers");
    }
    if (v < 1 || static_cast<std::size_t>(v) > n) throw InputError("--order entry out of range");
    out.push_back(static_cast<std::size_t>(v - 1));
  }
  if (out.size() != n) throw InputError("--order must list every crossing once");
  return out;
}

void cmd_eval_trace(Report& r, const std::string& file, const std::string& bq, const std::string& br,
                    const std::string& method, const std::string& order_arg) {
  r.inputs = {{"trace", file}, {"biquandle", bq}, {"bracket", br}, {"method", method}};
  if (method != "recursive" && method != "parity" && method != "statesum")
    throw InputError("--method must be recursive, parity or statesum");
  auto td = parse_trace_diagram(read_file(file));
  auto X = load_biquandle(bq);
  if (!require_biquandle(X, r)) return;
  auto b = load_bracket(X, br, r);
  if (!b) return;
  const auto order = parse_order(order_arg, td.crossing_count());
  std::vector<Coloring> cols;
  if (has_colors(td)) {
    cols.push_back(td.colors);
  } else {
    if (!td.colors.arcs.empty()) throw InputError("colors line does not cover every edge");
    cols = enumerate_trace_colorings(td, X);
  }
  json arr = json::array();
  for (const auto& col : cols) {
    TraceDiagram t = td;
    t.colors = col;
    auto rep = validate_trace_diagram(t, X);
    if (!rep.ok()) throw InputError("invalid trace diagram: " + rep.problems.front());
    json entry = {{"coloring", coloring_json(col)}};
    RingElement v = b->zero();
    if (method == "recursive") {
      v = evaluate_recursive(t, *b, order);
    } else if (method == "statesum") {
      auto d = to_oriented_diagram(t);
      v = state_sum(d, col, *b);
    } else {
      json par = json::array();
      for (std::size_t i = 0; i < t.crossing_count(); ++i) {
        auto p = magnetic_parity(t, i);
        par.push_back(to_string(p));
        r.text << "crossing " << i + 1 << ": " << to_string(p) << "\n";
      }
      entry["parity"] = par;
      v = evaluate_by_parity(t, *b);
    }
    entry["value"] = v.to_string();
    arr.push_back(entry);
    if (cols.size() > 1) r.text << coloring_line(col) << " -> ";
    r.text << "value: " << v.to_string() << "\n";
  }
  r.result = {{"evaluations", arr}};
}

void cmd_skein_check(Report& r, const std::string& dg, const std::string& bq, const std::string& br, int crossing) {
  r.inputs = {{"diagram", dg}, {"biquandle", bq}, {"bracket", br}, {"crossing", crossing}};
  auto d = parse_diagram(read_file(dg));
  require_valid(d);
  if (crossing < 1 || static_cast<std::size_t>(crossing) > d.crossing_count())
    throw InputError("--crossing out of range");
  auto X = load_biquandle(bq);
  if (!require_biquandle(X, r)) return;
  auto b = load_bracket(X, br, r);
  if (!b) return;
  json arr = json::array();
  bool all = true;
  std::size_t skipped = 0;
  for (const auto& col : enumerate_colorings(d, X)) {
    std::optional<SkeinCheck> sc;
    try {
      sc = skein_identity_check(d, col, *b, static_cast<std::size_t>(crossing - 1));
    } catch (const std::domain_error&) {
      ++skipped;
      continue;
    }
    const auto& s = *sc;
    const auto rhs = s.coefficients.c_switch * s.minus + s.coefficients.c_smooth * s.smooth;
    all = all && s.holds;
    arr.push_back({{"coloring", coloring_json(col)},
                   {"plus", s.plus.to_string()},
                   {"minus", s.minus.to_string()},
                   {"smooth", s.smooth.to_string()},
                   {"c_switch", s.coefficients.c_switch.to_string()},
                   {"c_smooth", s.coefficients.c_smooth.to_string()},
                   {"rhs", rhs.to_string()},
                   {"holds", s.holds}});
    r.text << coloring_line(col) << "\n  [L+] = " << s.plus.to_string() << "\n  [L-] = " << s.minus.to_string()
           << "\n  [L0] = " << s.smooth.to_string() << "\n  c_switch = " << s.coefficients.c_switch.to_string()
           << "\n  c_smooth = " << s.coefficients.c_smooth.to_string() << "\n  c_switch[L-] + c_smooth[L0] = "
           << rhs.to_string() << "\n  " << (s.holds ? "holds" : "FAILS") << "\n";
  }
  r.result = {{"checks", arr}, {"skipped", skipped}, {"holds", all && !arr.empty()}};
  if (skipped > 0) r.text << skipped << " coloring(s) skipped: crossing " << crossing << " is not monochromatic\n";
  if (arr.empty()) {
    r.text << "no coloring makes crossing " << crossing << " monochromatic\n";
    r.status = 1;
  } else if (!all) {
    r.status = 1;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Biquandle counting and bracket invariants, trace diagrams, bracket search"};
  app.require_subcommand(1);
  bool as_json = false;
  std::string bq, br, dg, file, cls = "any", method = "recursive", order;
  std::int64_t mod = 0;
  std::size_t limit = 0;
  std::optional<std::int64_t> delta;
  bool each = false;
  int crossing = 0;

  auto add_json = [&](CLI::App* s) { s->add_flag("--json", as_json, "Emit JSON"); };

  auto* vb = app.add_subcommand("verify-biquandle", "Check the biquandle axioms");
  vb->add_option("biquandle", bq, "Biquandle file, alexander(n,t,s) or trivial(n)")->required();
  add_json(vb);

  auto* vr = app.add_subcommand("verify-bracket", "Check the bracket conditions and report delta and w");
  vr->add_option("biquandle", bq)->required();
  vr->add_option("bracket", br)->required();
  add_json(vr);

  auto* co = app.add_subcommand("colorings", "List the colorings of a diagram");
  co->add_option("diagram", dg)->required();
  co->add_option("biquandle", bq)->required();
  add_json(co);

  auto* iv = app.add_subcommand("invariant", "Bracket multiset invariant of a diagram");
  iv->add_option("diagram", dg)->required();
  iv->add_option("biquandle", bq)->required();
  iv->add_option("bracket", br)->required();
  iv->add_flag("--per-coloring", each, "Also print each coloring's state sum");
  add_json(iv);

  auto* cl = app.add_subcommand("classify", "Adequacy class of a bracket");
  cl->add_option("biquandle", bq)->required();
  cl->add_option("bracket", br)->required();
  add_json(cl);

  auto* se = app.add_subcommand("search", "Find every bracket over Z_n");
  se->add_option("biquandle", bq)->required();
  se->add_option("--mod", mod, "Modulus n")->required();
  se->add_option("--class", cls, "adequate|over|under|neither|any");
  se->add_option("--limit", limit, "Stop after k results (0 = all)");
  se->add_option("--delta", delta, "Only this delta");
  add_json(se);

  auto* et = app.add_subcommand("eval-trace", "Evaluate a colored trace diagram");
  et->add_option("trace", file)->required();
  et->add_option("biquandle", bq)->required();
  et->add_option("bracket", br)->required();
  et->add_option("--method", method, "recursive|parity|statesum");
  et->add_option("--order", order, "Expansion order for recursive, e.g. 3,1,2");
  add_json(et);

  auto* sk = app.add_subcommand("skein-check", "Check the skein relation at a monochromatic crossing");
  sk->add_option("diagram", dg)->required();
  sk->add_option("biquandle", bq)->required();
  sk->add_option("bracket", br)->required();
  sk->add_option("--crossing", crossing, "1-based crossing number")->required();
  add_json(sk);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Report r;
  try {
    if (*vb) {
      r.command = "verify-biquandle";
      cmd_verify_biquandle(r, bq);
    } else if (*vr) {
      r.command = "verify-bracket";
      cmd_verify_bracket(r, bq, br);
    } else if (*co) {
      r.command = "colorings";
      cmd_colorings(r, dg, bq);
    } else if (*iv) {
      r.command = "invariant";
      cmd_invariant(r, dg, bq, br, each);
    } else if (*cl) {
      r.command = "classify";
      cmd_classify(r, bq, br);
    } else if (*se) {
      r.command = "search";
      cmd_search(r, bq, mod, cls, limit, delta);
    } else if (*et) {
      r.command = "eval-trace";
      cmd_eval_trace(r, file, bq, br, method, order);
    } else if (*sk) {
      r.command = "skein-check";
      cmd_skein_check(r, dg, bq, br, crossing);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    // NotRIReducible, MultiComponentCrossing, NotAUnit and friends
    r.status = 1;
    r.result["error"] = e.what();
    r.text << "error: " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }

  if (as_json) {
    json out = {{"command", r.command}, {"inputs", r.inputs}, {"result", r.result}, {"witnesses", r.witnesses}};
    std::cout << out.dump(2) << "\n";
  } else {
    std::cout << r.text.str();
  }
  return r.status;
}
