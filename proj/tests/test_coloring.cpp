#include <gtest/gtest.h>

#include "common.hpp"

using namespace tracebracket;

TEST(Coloring, TrefoilKernelVectorsAreColorings) {
  const auto d = tbtest::diagram("trefoil_pos.dgm");
  const auto X = alexander_biquandle(3, 1, 2);
  EXPECT_TRUE(validate_coloring(d, X, Coloring{{1, 2, 0, 2, 1, 0}, {}}));
  EXPECT_TRUE(validate_coloring(d, X, Coloring{{1, 0, 2, 2, 0, 1}, {}}));
}

TEST(Coloring, TrivialBiquandleConstantColoring) {
  for (const char* f : {"hopf_pos.dgm", "trefoil_pos.dgm", "trefoil_rii.dgm"}) {
    const auto d = tbtest::diagram(f);
    EXPECT_TRUE(validate_coloring(d, Biquandle::trivial(1), Coloring{std::vector<int>(d.semiarc_count(), 0), {}}));
  }
}

TEST(Coloring, TrefoilAllOnesRejected) {
  const auto d = tbtest::diagram("trefoil_pos.dgm");
  EXPECT_FALSE(validate_coloring(d, alexander_biquandle(3, 1, 2), Coloring{std::vector<int>(6, 1), {}}));
}

TEST(Coloring, PartialColoringThrows) {
  const auto d = tbtest::diagram("trefoil_pos.dgm");
  EXPECT_THROW(validate_coloring(d, Biquandle::trivial(1), Coloring{{0, 0, 0}, {}}), std::invalid_argument);
}

TEST(Coloring, Counts) {
  EXPECT_EQ(counting_invariant(tbtest::diagram("trefoil_pos.dgm"), alexander_biquandle(3, 1, 2)), 9u);
  EXPECT_EQ(counting_invariant(tbtest::diagram("hopf_pos.dgm"), tbtest::biquandle("bq2.txt")), 4u);
  for (int n = 1; n <= 4; ++n)
    EXPECT_EQ(counting_invariant(tbtest::diagram("unknot0.dgm"), Biquandle::trivial(n)), static_cast<std::size_t>(n));
  EXPECT_EQ(counting_invariant(tbtest::diagram("unknot0.dgm"), tbtest::biquandle("bq3.txt")), 3u);
}

TEST(Coloring, EnumerationIsSortedAndValid) {
  const auto d = tbtest::diagram("trefoil_pos.dgm");
  const auto X = alexander_biquandle(3, 1, 2);
  const auto cols = enumerate_colorings(d, X);
  EXPECT_TRUE(std::is_sorted(cols.begin(), cols.end()));
  for (const auto& c : cols) EXPECT_TRUE(validate_coloring(d, X, c));
}

TEST(Coloring, PairRoundTrip) {
  const auto X = tbtest::biquandle("bq3.txt");
  for (int sign : {1, -1})
    for (int x = 0; x < 3; ++x)
      for (int y = 0; y < 3; ++y) {
        const auto s = slots_from_pair(X, sign, {x, y});
        EXPECT_TRUE(crossing_condition(X, sign, s));
        EXPECT_EQ(crossing_pair(sign, s), (ColorPair{x, y}));
      }
}

TEST(Coloring, AlexanderCountMatchesNullity) {
  // Alexander(3,1,2) on the trefoil: the coloring space is a 2-dimensional kernel
  const auto d = tbtest::diagram("trefoil_pos.dgm");
  const auto cols = enumerate_colorings(d, alexander_biquandle(3, 1, 2));
  ASSERT_EQ(cols.size(), 9u);
  for (const auto& a : cols)
    for (const auto& b : cols) {
      Coloring s{std::vector<int>(6), {}};
      for (int i = 0; i < 6; ++i) s.arcs[i] = (a.arcs[i] + b.arcs[i]) % 3;
      EXPECT_TRUE(std::binary_search(cols.begin(), cols.end(), s));
    }
}

TEST(Coloring, InvariantUnderReidemeisterFixtures) {
  std::vector<Biquandle> bqs = {tbtest::biquandle("bq2.txt"), tbtest::biquandle("bq3.txt"),
                                alexander_biquandle(3, 1, 2), alexander_biquandle(5, 2, 3)};
  for (const auto& X : bqs) {
    const auto u = counting_invariant(tbtest::diagram("unknot0.dgm"), X);
    EXPECT_EQ(counting_invariant(tbtest::diagram("unknot_kink_pos.dgm"), X), u);
    EXPECT_EQ(counting_invariant(tbtest::diagram("unknot_kink_neg.dgm"), X), u);
    EXPECT_EQ(counting_invariant(tbtest::diagram("trefoil_rii.dgm"), X),
              counting_invariant(tbtest::diagram("trefoil_pos.dgm"), X));
  }
}

TEST(Riii, ShippedBiquandlesPass) {
  for (const auto& X : {tbtest::biquandle("bq2.txt"), tbtest::biquandle("bq3.txt"), tbtest::biquandle("trivial1.txt"),
                        alexander_biquandle(3, 1, 2)})
    EXPECT_TRUE(monochromatic_riii_check(X).ok());
}

TEST(Riii, ColumnsFollowDiagonal) {
  const auto X = alexander_biquandle(3, 1, 2);
  for (int x = 0; x < 3; ++x)
    for (int signs = 0; signs < 8; ++signs) {
      const auto t = riii_braid(0, signs);
      std::vector<std::pair<int, int>> pins;
      for (int id : t.left) pins.push_back({id, x});
      const auto cols = tangle_colorings(X, t.crossings, t.semiarcs, pins);
      ASSERT_EQ(cols.size(), 1u);
      const int y = X.diagonal(x);
      for (int id : t.middle) EXPECT_EQ(cols[0][id - 1], y);
      for (int id : t.right) EXPECT_EQ(cols[0][id - 1], X.diagonal(y));
    }
}

TEST(Riii, TwoElementDiagonalSwaps) {
  const auto X = tbtest::biquandle("bq2.txt");
  EXPECT_EQ(X.diagonal(0), 1);
  EXPECT_EQ(X.diagonal(1), 0);
}
