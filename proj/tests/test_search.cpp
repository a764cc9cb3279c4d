#include <gtest/gtest.h>

#include "common.hpp"

using namespace tracebracket;

namespace {
std::vector<std::string> flat(const std::vector<BiquandleBracket>& bs) {
  std::vector<std::string> out;
  for (const auto& b : bs) out.push_back(serialize_bracket(b));
  return out;
}
std::vector<BiquandleBracket> brackets(const std::vector<SearchResult>& rs) {
  std::vector<BiquandleBracket> out;
  for (const auto& r : rs) out.push_back(r.bracket);
  return out;
}
bool contains(const std::vector<SearchResult>& rs, const BiquandleBracket& b) {
  const auto s = serialize_bracket(b);
  for (const auto& r : rs)
    if (serialize_bracket(r.bracket) == s) return true;
  return false;
}
}  // namespace

TEST(Search, RediscoversExamples) {
  const auto X = tbtest::biquandle("bq3.txt");
  SearchSpec spec;
  spec.biquandle = X;
  spec.modulus = 5;
  const auto rs = search_brackets(spec);
  for (int i = 1; i <= 4; ++i) EXPECT_TRUE(contains(rs, tbtest::bracket(X, "br_z5_" + std::to_string(i) + ".txt"))) << i;
  SearchSpec s7;
  s7.biquandle = tbtest::biquandle("bq2.txt");
  s7.modulus = 7;
  EXPECT_TRUE(contains(search_brackets(s7), tbtest::bracket(s7.biquandle, "br_z7.txt")));
}

TEST(Search, MatchesBruteForce) {
  for (auto [X, n] : {std::pair{tbtest::biquandle("bq2.txt"), 5}, std::pair{tbtest::biquandle("bq2.txt"), 7},
                      std::pair{tbtest::biquandle("bq2.txt"), 4}, std::pair{Biquandle::trivial(1), 13},
                      std::pair{Biquandle::trivial(2), 5}}) {
    SearchSpec spec;
    spec.biquandle = X;
    spec.modulus = n;
    EXPECT_EQ(flat(brackets(search_brackets(spec))), flat(brute_force_brackets(X, n, 1u << 22))) << n;
  }
}

TEST(Search, BruteForceCap) {
  EXPECT_THROW(brute_force_brackets(tbtest::biquandle("bq3.txt"), 5, 1000), std::length_error);
}

TEST(Search, ThreadedSameAsSerial) {
  SearchSpec spec;
  spec.biquandle = tbtest::biquandle("bq3.txt");
  spec.modulus = 5;
  const auto serial = flat(brackets(search_brackets(spec)));
  spec.threads = 4;
  EXPECT_EQ(flat(brackets(search_brackets(spec))), serial);
}

TEST(Search, TrivialBiquandleEveryUnitPair) {
  // one element: each unit pair (A, B) is a bracket, with δ = -A/B - B/A forced
  for (std::int64_t n = 2; n <= 11; ++n) {
    SearchSpec spec;
    spec.modulus = n;
    std::size_t units = 0;
    for (std::int64_t a = 1; a < n; ++a) units += std::gcd(a, n) == 1;
    const auto rs = search_brackets(spec);
    EXPECT_EQ(rs.size(), units * units) << n;
    for (const auto& r : rs) {
      const auto& A = r.bracket.A(0, 0);
      const auto& B = r.bracket.B(0, 0);
      EXPECT_TRUE((B * B + r.bracket.delta() * A * B + A * A).is_zero());
    }
  }
}

TEST(Search, SortedAndClassified) {
  SearchSpec spec;
  spec.biquandle = tbtest::biquandle("bq3.txt");
  spec.modulus = 5;
  const auto rs = search_brackets(spec);
  std::vector<detail::RawBracket> raw;
  for (const auto& r : rs) {
    raw.push_back(detail::to_raw(r.bracket));
    EXPECT_EQ(r.adequacy.label(), classify_adequacy(r.bracket).label());
    EXPECT_TRUE(verify_bracket(spec.biquandle, BracketTables{r.bracket.ring(), r.bracket.A_table(), r.bracket.B_table()}).ok());
  }
  EXPECT_TRUE(std::is_sorted(raw.begin(), raw.end()));
}

TEST(Search, FilterLimitDelta) {
  SearchSpec spec;
  spec.biquandle = tbtest::biquandle("bq3.txt");
  spec.modulus = 5;
  const auto all = search_brackets(spec);
  for (const char* cls : {"adequate", "over", "under", "neither"}) {
    spec.class_filter = cls;
    const auto some = search_brackets(spec);
    EXPECT_FALSE(some.empty()) << cls;
    for (const auto& r : some) EXPECT_EQ(r.adequacy.label(), cls);
  }
  spec.class_filter = "any";
  spec.limit = 3;
  EXPECT_EQ(search_brackets(spec).size(), 3u);
  spec.limit.reset();
  spec.class_filter.reset();
  spec.delta = 0;
  for (const auto& r : search_brackets(spec)) EXPECT_TRUE(r.bracket.delta().is_zero());
  spec.modulus = 1;
  EXPECT_THROW(search_brackets(spec), std::invalid_argument);
}
