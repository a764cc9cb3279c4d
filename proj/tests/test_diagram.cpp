#include <gtest/gtest.h>

#include "common.hpp"

using namespace tracebracket;

namespace {
SmoothingState state(const std::string& s) {
  SmoothingState st;
  for (char c : s) st.push_back(c == 'A' ? Smoothing::A : Smoothing::B);
  return st;
}
}  // namespace

TEST(Diagram, FixturesValid) {
  for (const char* f : {"unknot0.dgm", "unknot_kink_pos.dgm", "unknot_kink_neg.dgm", "hopf_pos.dgm", "trefoil_pos.dgm",
                        "trefoil_rii.dgm"})
    EXPECT_TRUE(validate_diagram(tbtest::diagram(f)).ok()) << f;
}

TEST(Diagram, ReusedInputRejected) {
  const OrientedDiagram d({{1, 1, 2, 3, 4}, {1, 1, 4, 1, 2}});
  EXPECT_FALSE(validate_diagram(d).ok());
  EXPECT_THROW(require_valid(d), std::invalid_argument);
}

TEST(Diagram, MissingSemiarcRejected) {
  EXPECT_FALSE(validate_diagram(OrientedDiagram({{1, 1, 2, 1, 2}, {1, 4, 5, 4, 5}})).ok());
}

TEST(Diagram, WritheCounts) {
  EXPECT_EQ(writhe_counts(tbtest::diagram("trefoil_pos.dgm")), std::make_pair(3, 0));
  EXPECT_EQ(writhe_counts(tbtest::diagram("hopf_pos.dgm")), std::make_pair(2, 0));
  // sign tally only; the crossings need not form a valid diagram
  const OrientedDiagram mixed({{1, 4, 8, 1, 5}, {1, 8, 3, 4, 7}, {-1, 2, 6, 3, 5}, {-1, 6, 1, 7, 2}});
  EXPECT_EQ(writhe_counts(mixed), std::make_pair(2, 2));
}

TEST(Diagram, HopfStateLoops) {
  const auto h = tbtest::diagram("hopf_pos.dgm");
  EXPECT_EQ(count_state_loops(h, state("AA")), 2);
  EXPECT_EQ(count_state_loops(h, state("AB")), 1);
  EXPECT_EQ(count_state_loops(h, state("BA")), 1);
  EXPECT_EQ(count_state_loops(h, state("BB")), 2);
}

TEST(Diagram, TrefoilStateLoops) {
  const auto t = tbtest::diagram("trefoil_pos.dgm");
  EXPECT_EQ(count_state_loops(t, state("AAA")), 2);  // oriented smoothing gives the Seifert circles
  EXPECT_EQ(count_state_loops(t, state("BBB")), 3);
  EXPECT_THROW(count_state_loops(t, state("AA")), std::invalid_argument);
}

TEST(Diagram, FreeLoopsCount) {
  EXPECT_EQ(count_state_loops(tbtest::diagram("unknot0.dgm"), {}), 1);
}

TEST(Diagram, SwitchAll) {
  auto d = tbtest::diagram("trefoil_pos.dgm");
  for (std::size_t i = 0; i < 3; ++i) d = switch_crossing(d, i);
  EXPECT_EQ(writhe_counts(d), std::make_pair(0, 3));
  EXPECT_TRUE(validate_diagram(d).ok());
}

TEST(Diagram, SwitchTwiceIsIdentity) {
  const auto d = tbtest::diagram("hopf_pos.dgm");
  EXPECT_EQ(switch_crossing(switch_crossing(d, 1), 1), d);
}

TEST(Diagram, SwitchedTrefoilIsUnknot) {
  const auto beta = tbtest::generic_bracket();
  const auto d = switch_crossing(tbtest::diagram("trefoil_pos.dgm"), 0);
  const Coloring c{std::vector<int>(6, 0), {}};
  EXPECT_EQ(state_sum(d, c, beta), beta.delta());
}

TEST(Diagram, SmoothHopfGivesKink) {
  const auto s = oriented_smoothing(tbtest::diagram("hopf_pos.dgm"), 0);
  EXPECT_EQ(s.crossing_count(), 1u);
  EXPECT_EQ(s.free_loops(), 0);
  EXPECT_EQ(s.crossings().front(), (Crossing{1, 1, 2, 1, 2}));
}

TEST(Diagram, SmoothTrefoilGivesHopfLink) {
  const auto s = oriented_smoothing(tbtest::diagram("trefoil_pos.dgm"), 0);
  EXPECT_EQ(s.crossing_count(), 2u);
  EXPECT_TRUE(validate_diagram(s).ok());
  const auto beta = tbtest::generic_bracket();
  const auto hopf = tbtest::diagram("hopf_pos.dgm");
  EXPECT_EQ(state_sum(s, Coloring{std::vector<int>(s.semiarc_count(), 0), {}}, beta),
            state_sum(hopf, Coloring{std::vector<int>(4, 0), {}}, beta));
}

TEST(Diagram, SmoothKinkGivesTwoLoops) {
  for (const char* f : {"unknot_kink_pos.dgm", "unknot_kink_neg.dgm"}) {
    const auto s = oriented_smoothing(tbtest::diagram(f), 0);
    EXPECT_EQ(s.crossing_count(), 0u);
    EXPECT_EQ(s.free_loops(), 2) << f;
  }
}

TEST(DiagramFormat, RoundTrip) {
  for (const char* f : {"unknot0.dgm", "hopf_pos.dgm", "trefoil_rii.dgm"}) {
    const auto d = tbtest::diagram(f);
    EXPECT_EQ(parse_diagram(serialize_diagram(d)), d);
  }
}

TEST(DiagramFormat, Errors) {
  EXPECT_THROW(parse_diagram("+ 1 2 3\n"), ParseError);
  EXPECT_THROW(parse_diagram("* 1 2 3 4\n"), ParseError);
  EXPECT_THROW(parse_diagram("+ 1 0 3 4\n"), ParseError);
  EXPECT_THROW(parse_diagram("loops 1\nloops 2\n"), ParseError);
  try {
    parse_diagram("# c\n+ 1 2 1 2\n- 1 q 1 2\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 3);
  }
}
