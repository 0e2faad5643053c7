#include <gtest/gtest.h>

#include <set>
#include <tuple>

#include "oracles.hpp"
#include "pythperm/triples.hpp"

using namespace pythperm;

TEST(FromParams, KnownTriples) {
  EXPECT_EQ(from_params({2, 1, 1}), (PythTriple{3, 4, 5}));
  EXPECT_EQ(from_params({3, 2, 1}), (PythTriple{5, 12, 13}));
  // 81 + 144 = 225
  EXPECT_EQ(from_params({2, 1, 3}), (PythTriple{9, 12, 15}));
}

TEST(FromParams, RejectsIllegalParameters) {
  EXPECT_THROW(from_params({1, 1, 1}), ParameterError);
  EXPECT_THROW(from_params({3, 0, 1}), ParameterError);
  EXPECT_THROW(from_params({3, 2, 0}), ParameterError);
}

TEST(FromParams, OverflowIsARangeError) {
  EXPECT_THROW(from_params({Int{1} << 32, 1, 1}), std::range_error);
  EXPECT_THROW(from_params({3, 2, Int{1} << 62}), OverflowError);
}

TEST(FromParams, AlwaysValid) {
  for (Int f = 2; f < 40; ++f)
    for (Int g = 1; g < f; ++g)
      for (Int h = 1; h < 5; ++h) EXPECT_TRUE(is_valid(from_params({f, g, h}))) << f << " " << g << " " << h;
}

TEST(IsValid, Examples) {
  EXPECT_TRUE(is_valid(3, 4, 5));
  EXPECT_FALSE(is_valid(1, 1, 2));
  EXPECT_TRUE(is_valid(20, 21, 29));
  EXPECT_FALSE(is_valid(0, 5, 5));
  EXPECT_FALSE(is_valid(-3, 4, 5));
  EXPECT_FALSE(is_valid(INT64_MAX, INT64_MAX, INT64_MAX));
}

TEST(Enumerate, SmallCases) {
  EXPECT_TRUE(enumerate(4, true).empty());
  EXPECT_EQ(enumerate(5, true), (std::vector<PythTriple>{{3, 4, 5}}));
  EXPECT_EQ(enumerate(13, true), (std::vector<PythTriple>{{3, 4, 5}, {5, 12, 13}}));
  const auto all15 = enumerate(15, false);
  EXPECT_NE(std::find(all15.begin(), all15.end(), PythTriple{9, 12, 15}), all15.end());
}

TEST(Enumerate, OrderedByHypotenuseThenShortLeg) {
  const auto all = enumerate(130, false);
  for (std::size_t i = 1; i < all.size(); ++i)
    EXPECT_LT(std::pair(all[i - 1].t, all[i - 1].min_leg()), std::pair(all[i].t, all[i].min_leg()));
}

TEST(Enumerate, MatchesBruteForce) {
  for (bool primitive : {true, false}) {
    for (Int max_t : {5, 13, 25, 65, 100}) {
      std::set<std::tuple<Int, Int, Int>> got;
      for (const auto& p : enumerate(max_t, primitive)) {
        EXPECT_TRUE(got.emplace(p.min_leg(), p.max_leg(), p.t).second) << "duplicate " << p;
      }
      EXPECT_EQ(got, oracle::triples(max_t, primitive)) << max_t << " primitive=" << primitive;
    }
  }
}

TEST(Enumerate, EmitsNormalizedLegs) {
  for (const auto& p : enumerate(200, false)) {
    EXPECT_EQ(p.s % 4, 0) << p;
    EXPECT_EQ((p.r - p.t) % 2, 0) << p;
  }
}

TEST(Normalize, Examples) {
  EXPECT_EQ(normalize({4, 3, 5}).triple, (PythTriple{3, 4, 5}));
  EXPECT_EQ(normalize({5, 12, 13}).triple, (PythTriple{5, 12, 13}));
  EXPECT_EQ(normalize({5, 12, 13}).twos, 0);

  const auto n = normalize({6, 8, 10});
  EXPECT_EQ(n.triple, (PythTriple{6, 8, 10}));
  EXPECT_EQ(n.reduced, (PythTriple{3, 4, 5}));
  EXPECT_EQ(n.twos, 1);

  const auto m = normalize({8, 6, 10});
  EXPECT_EQ(m.triple, (PythTriple{6, 8, 10}));
}

TEST(Normalize, BothLegsDivisibleByFour) {
  // (12, 16, 20) = 4 (3, 4, 5): the leg with more factors of 2 is s.
  const auto n = normalize({16, 12, 20});
  EXPECT_EQ(n.triple, (PythTriple{12, 16, 20}));
  EXPECT_EQ(n.reduced, (PythTriple{3, 4, 5}));
  EXPECT_EQ(n.twos, 2);
}

TEST(Normalize, RejectsNonTriples) {
  EXPECT_THROW(normalize({1, 1, 2}), ParameterError);
}

TEST(Normalize, PropertyOverAllSmallTriples) {
  // Brute-force over every triple with t <= 300, in both leg orders.
  for (const auto& [lo, hi, t] : oracle::triples(300, false)) {
    for (const PythTriple in : {PythTriple{lo, hi, t}, PythTriple{hi, lo, t}}) {
      const auto n = normalize(in);
      EXPECT_EQ(n.triple.t, t);
      EXPECT_EQ(n.triple.min_leg(), lo);
      EXPECT_EQ(n.triple.max_leg(), hi);
      EXPECT_EQ(n.triple.s % 4, 0) << in;
      EXPECT_EQ((n.triple.r - n.triple.t) % 2, 0) << in;
      EXPECT_TRUE(is_normalized(n.reduced));
      EXPECT_EQ(n.reduced.t << n.twos, t);
      EXPECT_FALSE(n.reduced.r % 2 == 0 && n.reduced.s % 2 == 0 && n.reduced.t % 2 == 0);
    }
  }
}
