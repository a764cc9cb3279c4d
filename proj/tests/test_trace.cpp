#include <gtest/gtest.h>

#include "common.hpp"

using namespace tracebracket;

namespace {
RingElement L(const std::string& s) { return parse_ring_element(RingDescriptor::laurent(), s); }
const char* kTrefoilGeneric = "-A^-1*B - A^-3*B^3 - A^-5*B^5 + A^-9*B^9";

TraceNode node(NodeKind k, int sign, int ui, int oi, int oo, int uo) { return {k, sign, ui, oi, oo, uo, {0, 0}}; }

TraceDiagram trefoil_mono() {
  return from_diagram(tbtest::diagram("trefoil_pos.dgm"), Coloring{std::vector<int>(6, 0), {}});
}
}  // namespace

TEST(Crossingless, FreeLoop) {
  TraceDiagram td;
  td.free_loops = 1;
  const auto b = tbtest::generic_bracket();
  EXPECT_EQ(evaluate_crossingless(td, b), b.delta());
}

TEST(Crossingless, SingleTraceTwoCircles) {
  // a positive A-trace on two otherwise separate circles
  TraceDiagram td;
  td.nodes = {node(NodeKind::TraceA, 1, 1, 2, 1, 2)};
  td.colors = Coloring{{0, 0}, {}};
  const auto b = tbtest::generic_bracket();
  EXPECT_EQ(evaluate_crossingless(td, b), b.delta().pow(2) * b.w().inverse());
}

TEST(Crossingless, OppositeTracesCancelW) {
  TraceDiagram td;
  td.nodes = {node(NodeKind::TraceA, 1, 1, 2, 3, 4), node(NodeKind::TraceA, -1, 3, 4, 1, 2)};
  td.colors = Coloring{{0, 0, 0, 0}, {}};
  const auto b = tbtest::generic_bracket();
  EXPECT_EQ(evaluate_crossingless(td, b), b.delta().pow(2));
}

TEST(Crossingless, RejectsCrossings) {
  EXPECT_THROW(evaluate_crossingless(trefoil_mono(), tbtest::generic_bracket()), std::invalid_argument);
}

TEST(Recursive, MatchesStateSumOnTrefoil) {
  const auto b = tbtest::generic_bracket();
  EXPECT_EQ(evaluate_recursive(trefoil_mono(), b).to_string(), kTrefoilGeneric);
}

TEST(Recursive, OrderIndependent) {
  const auto b = tbtest::generic_bracket();
  const auto td = trefoil_mono();
  std::vector<std::size_t> order = {0, 1, 2};
  do {
    EXPECT_EQ(evaluate_recursive(td, b, order).to_string(), kTrefoilGeneric);
  } while (std::next_permutation(order.begin(), order.end()));
}

TEST(Recursive, BadOrder) {
  const auto b = tbtest::generic_bracket();
  EXPECT_THROW(evaluate_recursive(trefoil_mono(), b, {0, 1}), std::invalid_argument);
  EXPECT_THROW(evaluate_recursive(trefoil_mono(), b, {0, 0, 1}), std::invalid_argument);
}

TEST(Smoothing, Coefficients) {
  const auto b = tbtest::generic_bracket();
  const auto td = trefoil_mono();
  auto [ca, ta] = smooth_crossing(td, 0, Smoothing::A, b);
  auto [cb, tb] = smooth_crossing(td, 0, Smoothing::B, b);
  EXPECT_EQ(ca, L("A"));
  EXPECT_EQ(cb, L("B"));
  EXPECT_EQ(ta.nodes[0].kind, NodeKind::TraceA);
  EXPECT_EQ(tb.nodes[0].kind, NodeKind::TraceB);
  EXPECT_EQ(ta.crossing_count(), 2u);
  const auto neg = from_diagram(switch_crossing(tbtest::diagram("trefoil_pos.dgm"), 1), td.colors);
  EXPECT_EQ(smooth_crossing(neg, 1, Smoothing::A, b).first, L("A^-1"));
  EXPECT_EQ(smooth_crossing(neg, 1, Smoothing::B, b).first, L("B^-1"));
}

TEST(Checkpoint, TrefoilIntermediateLine) {
  const auto b = tbtest::generic_bracket();
  const auto mid = L("-A^4*B^-1 - B^3 + A^-2*B^5") * b.delta() * b.w().pow(-3);
  EXPECT_EQ(mid.to_string(), kTrefoilGeneric);
  // first crossing expanded: A [trace A] + B [trace B]
  const auto td = trefoil_mono();
  auto [ca, ta] = smooth_crossing(td, 0, Smoothing::A, b);
  auto [cb, tbd] = smooth_crossing(td, 0, Smoothing::B, b);
  EXPECT_EQ(ca * evaluate_recursive(ta, b) + cb * evaluate_recursive(tbd, b), mid);
}

TEST(Parity, TrefoilBTrace) {
  const auto td = parse_trace_diagram(tbtest::fixture_text("trefoil_b1.trace"));
  ASSERT_TRUE(has_colors(td));
  EXPECT_EQ(magnetic_parity(td, 0), Parity::Odd);
  EXPECT_EQ(magnetic_parity(td, 1), Parity::Odd);
  EXPECT_TRUE(ri_reducible(td));
  const auto b = tbtest::generic_bracket();
  const auto phi = b.A(0, 0) + b.delta() * b.B(0, 0);
  const auto want = phi * phi * b.delta() * b.w().pow(-3);
  EXPECT_EQ(evaluate_by_parity(td, b), want);
  EXPECT_EQ(evaluate_recursive(td, b), want);
  EXPECT_EQ(want.to_string(), "A^-7*B^6 + A^-9*B^8");
}

TEST(Parity, HopfIsMultiComponent) {
  const auto X = tbtest::biquandle("bq2.txt");
  const auto d = tbtest::diagram("hopf_pos.dgm");
  const auto td = from_diagram(d, enumerate_colorings(d, X).front());
  EXPECT_EQ(magnetic_parity(td, 0), Parity::MultiComponent);
  EXPECT_EQ(to_string(Parity::MultiComponent), "multi-component");
  EXPECT_THROW(evaluate_by_parity(td, tbtest::bracket(X, "br_z7.txt")), std::domain_error);
}

TEST(Parity, KinkIsEven) {
  const auto b = tbtest::generic_bracket();
  for (const char* f : {"unknot_kink_pos.dgm", "unknot_kink_neg.dgm"}) {
    const auto td = from_diagram(tbtest::diagram(f), Coloring{{0, 0}, {}});
    EXPECT_EQ(magnetic_parity(td, 0), Parity::Even);
    EXPECT_EQ(evaluate_by_parity(td, b), evaluate_recursive(td, b));
    EXPECT_EQ(evaluate_by_parity(td, b), b.delta());
  }
}

TEST(Parity, TrefoilNotReducible) {
  const auto td = trefoil_mono();
  EXPECT_FALSE(ri_reducible(td));
  EXPECT_THROW(evaluate_by_parity(td, tbtest::generic_bracket()), NotRIReducible);
}

TEST(Parity, AgreesWithRecursiveOnZ5) {
  // every single-trace smoothing of the trefoil, every coloring, every example bracket
  const auto X = tbtest::biquandle("bq3.txt");
  const auto d = tbtest::diagram("trefoil_pos.dgm");
  int checked = 0;
  for (int i = 1; i <= 4; ++i) {
    const auto b = tbtest::bracket(X, "br_z5_" + std::to_string(i) + ".txt");
    for (const auto& c : enumerate_colorings(d, X))
      for (std::size_t k = 0; k < 3; ++k)
        for (Smoothing s : {Smoothing::A, Smoothing::B}) {
          const auto td = smooth_crossing(from_diagram(d, c), k, s, b).second;
          if (!ri_reducible(td)) continue;
          try {
            EXPECT_EQ(evaluate_by_parity(td, b), evaluate_recursive(td, b));
            ++checked;
          } catch (const MultiComponentCrossing&) {
          }
        }
  }
  EXPECT_GT(checked, 0);
}

TEST(TraceFormat, ParsesAllNodeKinds) {
  const auto td = parse_trace_diagram(
      "traceA + 1@2 3@4 1 2\n"
      "traceB - sink(2,4) source(5,1) 2 2\n"
      "marker 5@3 6@6\n"
      "loops 1\n"
      "colors 1 1 1 1 1 1\n"
      "loopcolors 2\n");
  ASSERT_EQ(td.nodes.size(), 3u);
  EXPECT_EQ(td.nodes[0], (TraceNode{NodeKind::TraceA, 1, 1, 3, 2, 4, {0, 1}}));
  EXPECT_EQ(td.nodes[1], (TraceNode{NodeKind::TraceB, -1, 2, 4, 5, 1, {1, 1}}));
  EXPECT_EQ(td.nodes[2].kind, NodeKind::Marker);
  EXPECT_EQ(td.free_loops, 1);
  EXPECT_EQ(td.colors.loops, std::vector<int>{1});
}

TEST(TraceFormat, Errors) {
  EXPECT_THROW(parse_trace_diagram("traceA + 1-2 3@4 1 1\n"), ParseError);
  EXPECT_THROW(parse_trace_diagram("traceB + (1,2) source(3,4) 1 1\n"), ParseError);
  EXPECT_THROW(parse_trace_diagram("+ 1 2 3\n"), ParseError);
  EXPECT_THROW(parse_trace_diagram("+ 1 2 1 2\ncolors 1\n"), ParseError);
  EXPECT_THROW(parse_trace_diagram("+ 1 2 1 2\ncolors 0 1\n"), ParseError);
  EXPECT_THROW(parse_trace_diagram("bogus\n"), ParseError);
}

TEST(TraceColorings, TrefoilB1) {
  const auto td = parse_trace_diagram(tbtest::fixture_text("trefoil_b1.trace"));
  const auto cols = enumerate_trace_colorings(td, Biquandle::trivial(1));
  ASSERT_EQ(cols.size(), 1u);
  EXPECT_EQ(cols[0].arcs, td.colors.arcs);
  EXPECT_TRUE(validate_trace_diagram(td, Biquandle::trivial(1)).ok());
}

TEST(TraceConvert, RoundTrip) {
  const auto d = tbtest::diagram("trefoil_rii.dgm");
  const auto back = to_oriented_diagram(from_diagram(d, Coloring{std::vector<int>(d.semiarc_count(), 0), {}}));
  EXPECT_EQ(serialize_diagram(back), serialize_diagram(d));
  EXPECT_THROW(to_oriented_diagram(parse_trace_diagram(tbtest::fixture_text("trefoil_b1.trace"))),
               std::invalid_argument);
}
