#include <gtest/gtest.h>

#include <fstream>
#include <set>

#include "oracles.hpp"
#include "pythperm/records.hpp"
#include "pythperm/search.hpp"

using namespace pythperm;

namespace {

std::set<std::vector<Int>> coefficient_sets(const std::vector<SearchRecord>& records) {
  std::set<std::vector<Int>> out;
  for (const auto& r : records) out.insert(r.coefficients);
  return out;
}

std::set<std::vector<Int>> brute_force_2x2(Int lo, Int hi) {
  std::set<std::vector<Int>> out;
  for (const auto& m : oracle::multisets(lo, hi, 4))
    if (oracle::all_arrangements_integer({m[0], m[1], m[2], m[3]})) out.insert(m);
  return out;
}

std::vector<std::string> dump_lines(const std::vector<SearchRecord>& records) {
  std::vector<std::string> out;
  for (const auto& r : records) out.push_back(to_json(r).dump());
  return out;
}

std::vector<std::string> fixture_lines(const std::string& name) {
  std::ifstream in(std::string(PYTHPERM_FIXTURE_DIR) + "/" + name);
  EXPECT_TRUE(in) << "missing fixture " << name;
  std::vector<std::string> out;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) out.push_back(line);
  return out;
}

const SearchRecord* find(const std::vector<SearchRecord>& records, std::vector<Int> coefficients) {
  std::sort(coefficients.begin(), coefficients.end());
  for (const auto& r : records)
    if (r.coefficients == coefficients) return &r;
  return nullptr;
}

}  // namespace

TEST(Binomial, Values) {
  EXPECT_EQ(binomial(9, 4), 126u);
  EXPECT_EQ(binomial(16, 4), 1820u);
  EXPECT_EQ(binomial(11, 9), 55u);
  EXPECT_EQ(binomial(3, 5), 0u);
  EXPECT_EQ(multiset_count(6, 4), 126u);
  EXPECT_THROW(binomial(200, 100), OverflowError);
}

TEST(MultisetCursor, SeekAndNextMatchNestedLoops) {
  for (std::size_t k : {1u, 2u, 4u, 9u}) {
    const auto all = oracle::multisets(-2, 2, k);
    ASSERT_EQ(all.size(), multiset_count(5, k));
    MultisetCursor cursor(-2, 2, k);
    cursor.seek(0);
    for (std::size_t i = 0; i < all.size(); ++i) {
      EXPECT_EQ(cursor.values(), all[i]);
      MultisetCursor jump(-2, 2, k);
      jump.seek(i);
      EXPECT_EQ(jump.values(), all[i]) << "rank " << i;
      EXPECT_EQ(cursor.next(), i + 1 < all.size());
    }
  }
}

TEST(Classify, Examples) {
  const auto a = classify(std::array<Int, 4>{12, 6, 7, 1});
  EXPECT_EQ(a.primary, Classification::ansatz);
  ASSERT_TRUE(a.ansatz);
  EXPECT_EQ(a.ansatz->t, 13);

  const auto d = classify(std::array<Int, 4>{1, 4, 0, 0});
  EXPECT_EQ(d.primary, Classification::degenerate);
  EXPECT_TRUE(d.degenerate);
  EXPECT_FALSE(d.ansatz);

  const auto c = classify(std::array<Int, 4>{3, 3, 3, 3});
  EXPECT_EQ(c.primary, Classification::constant);

  EXPECT_EQ(classify(std::array<Int, 4>{1, 2, 0, 0}).degenerate, false);
  EXPECT_EQ(classify(std::array<Int, 4>{-1, -4, 0, 0}).degenerate, true);
  EXPECT_EQ(classify(std::array<Int, 4>{-1, 4, 0, 0}).degenerate, false);
}

TEST(RecoverTriple, CanonicalAndOddT) {
  for (const auto& t : enumerate(60, true)) {
    for (const auto& q : {canonical(t), odd_t_solution(t)}) {
      const auto info = classify(q);
      ASSERT_TRUE(info.ansatz) << q.str();
      bool any = false;
      for (bool swap : {false, true}) {
        const auto rec = recover_triple(*info.ansatz, swap);
        if (!rec) continue;
        any = true;
        EXPECT_TRUE(is_valid(*rec)) << q.str();
        EXPECT_EQ(rec->t, t.t);
      }
      EXPECT_TRUE(any) << q.str();
    }
  }
}

TEST(Search2x2, RangeZeroToFive) {
  const auto records = search_2x2({0, 5});
  EXPECT_EQ(coefficient_sets(records), brute_force_2x2(0, 5));
  const auto* canon = find(records, {5, 3, 2, 0});
  ASSERT_TRUE(canon);
  EXPECT_EQ(canon->classification, Classification::ansatz);
  EXPECT_EQ(canon->ansatz->t, 5);
  const auto* deg = find(records, {1, 4, 0, 0});
  ASSERT_TRUE(deg);
  EXPECT_EQ(deg->classification, Classification::degenerate);
  for (Int q = 0; q <= 5; ++q) {
    const auto* c = find(records, {q, q, q, q});
    ASSERT_TRUE(c);
    EXPECT_EQ(c->classification, Classification::constant);
    EXPECT_TRUE(c->trivial);
  }
}

TEST(Search2x2, LexicographicOrderAndSoundness) {
  const auto records = search_2x2({-4, 4});
  for (std::size_t i = 1; i < records.size(); ++i) EXPECT_LT(records[i - 1].coefficients, records[i].coefficients);
  for (const auto& r : records) {
    const std::array<Int, 4> q{r.coefficients[0], r.coefficients[1], r.coefficients[2], r.coefficients[3]};
    EXPECT_TRUE(verify_all_permutations(q).all_pass);
    EXPECT_TRUE(oracle::all_arrangements_integer(q));
    const auto reps = representatives(q);
    ASSERT_EQ(r.eigenvalue_classes.size(), 6u);
    for (std::size_t i = 0; i < 6; ++i) {
      const auto e = oracle::eigen2(reps[i].a, reps[i].b, reps[i].c, reps[i].d);
      ASSERT_TRUE(e);
      EXPECT_EQ(r.eigenvalue_classes[i], (std::vector<Int>{e->first, e->second}));
    }
  }
  EXPECT_EQ(coefficient_sets(records), brute_force_2x2(-4, 4));
}

TEST(Search2x2, GoldenFixtures) {
  // Frozen from the first verified run; see tests/fixtures/README.md.
  const auto small = search_2x2({0, 1});
  EXPECT_EQ(dump_lines(small), fixture_lines("search2_0_1.jsonl"));
  EXPECT_TRUE(find(small, {0, 0, 0, 0}));
  EXPECT_TRUE(find(small, {1, 1, 1, 1}));

  const auto signed_small = search_2x2({-1, 1});
  EXPECT_EQ(dump_lines(signed_small), fixture_lines("search2_m1_1.jsonl"));
  EXPECT_EQ(find(signed_small, {1, 1, -1, -1}) != nullptr, oracle::all_arrangements_integer({1, 1, -1, -1}));
}

TEST(Search2x2, BudgetRefusalReportsEstimate) {
  try {
    search_2x2({0, 100}, 1000);
    FAIL() << "expected refusal";
  } catch (const BudgetExceeded& e) {
    EXPECT_EQ(e.required(), multiset_count(101, 4));
    EXPECT_EQ(e.budget(), 1000u);
  }
}

TEST(Search2x2, RangeValidation) {
  EXPECT_THROW(search_2x2({3, 2}), ParameterError);
  EXPECT_THROW(search_2x2({0, kMaxAbsCoefficient2 + 1}), ParameterError);
}

TEST(PartitionWork, Examples) {
  const SearchSpace space{2, {0, 5}, 1};
  const auto one = partition_work(space, 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].unit_begin, 0u);
  EXPECT_EQ(one[0].unit_end, 126u);
  EXPECT_THROW(partition_work(space, 0), ParameterError);
}

TEST(PartitionWork, DisjointCoveringForAnyShardCount) {
  for (std::uint64_t total : {0u, 1u, 7u, 35u, 126u})
    for (std::size_t shards : {1u, 2u, 3u, 8u, 64u}) {
      const auto plan = partition_work(10, 10 + total, shards);
      ASSERT_EQ(plan.size(), shards);
      std::uint64_t at = 10;
      for (const auto& d : plan) {
        EXPECT_EQ(d.unit_begin, at);
        EXPECT_GE(d.unit_end, d.unit_begin);
        at = d.unit_end;
      }
      EXPECT_EQ(at, 10 + total);
    }
}

TEST(Sharding, OutputIndependentOfShardCount) {
  const auto reference = search_2x2({0, 5}, kDefaultWorkBudget2, 1);
  EXPECT_EQ(search_2x2({0, 5}, kDefaultWorkBudget2, 4), reference);
  const auto ref3 = search_2x2({0, 3}, kDefaultWorkBudget2, 1);
  EXPECT_EQ(search_2x2({0, 3}, kDefaultWorkBudget2, 64), ref3);
  const auto neg = search_2x2({-3, 3}, kDefaultWorkBudget2, 1);
  for (std::size_t s : {2u, 5u, 13u}) EXPECT_EQ(search_2x2({-3, 3}, kDefaultWorkBudget2, s), neg);
}

TEST(Search3x3, RangeZeroToOne) {
  const auto result = search_3x3({0, 1}, UINT64_MAX);
  ASSERT_TRUE(result.complete());
  const auto& recs = result.records();
  const auto zeros = std::vector<Int>(9, 0), ones = std::vector<Int>(9, 1);
  bool saw_zeros = false, saw_ones = false;
  for (const auto& r : recs) {
    saw_zeros |= r.coefficients == zeros;
    saw_ones |= r.coefficients == ones;
    EXPECT_EQ(r.trivial, r.coefficients.front() == r.coefficients.back());
    std::array<Int, 9> n{};
    std::copy(r.coefficients.begin(), r.coefficients.end(), n.begin());
    EXPECT_TRUE(oracle::all_arrangements_integer_3x3(n));
  }
  EXPECT_TRUE(saw_zeros);
  EXPECT_TRUE(saw_ones);
  // Completeness against the oracle over the whole range.
  std::set<std::vector<Int>> want;
  for (const auto& m : oracle::multisets(0, 1, 9)) {
    std::array<Int, 9> n{};
    std::copy(m.begin(), m.end(), n.begin());
    if (oracle::all_arrangements_integer_3x3(n)) want.insert(m);
  }
  EXPECT_EQ(coefficient_sets(recs), want);
}

TEST(Search3x3, ResumeEqualsUninterrupted) {
  const auto full = search_3x3({0, 1}, UINT64_MAX, 1, 2);
  ASSERT_GT(full.state.space.unit_total(), 2u);
  auto part = search_3x3({0, 1}, 2, 1, 2);
  EXPECT_FALSE(part.complete());
  while (!part.complete()) part = search_3x3({0, 1}, 1, 3, 2, false, part.state);
  EXPECT_EQ(part.records(), full.records());
}

TEST(Search3x3, ResumeRejectsMismatchedSpace) {
  auto part = search_3x3({0, 1}, 1, 1, 2);
  EXPECT_THROW(search_3x3({0, 2}, 1, 1, 2, false, part.state), CheckpointError);
}

TEST(Search3x3, NegativeRangesNeedOptIn) {
  EXPECT_THROW(search_3x3({-1, 1}, 1), ParameterError);
  EXPECT_NO_THROW(search_3x3({-1, 0}, 1, 1, 1, true));
}

TEST(Search3x3, ZeroToTwoMatchesOracle) {
  std::set<std::vector<Int>> want;
  for (const auto& m : oracle::multisets(0, 2, 9)) {
    std::array<Int, 9> n{};
    std::copy(m.begin(), m.end(), n.begin());
    if (oracle::all_arrangements_integer_3x3(n)) want.insert(m);
  }
  const auto result = search_3x3({0, 2}, UINT64_MAX, 1, 7);
  EXPECT_EQ(coefficient_sets(result.records()), want);
}

TEST(Search3x3, GoldenFixtureZeroToTwo) {
  const auto result = search_3x3({0, 2}, UINT64_MAX, 2);
  ASSERT_TRUE(result.complete());
  EXPECT_EQ(dump_lines(result.records()), fixture_lines("search3_0_2.jsonl"));
}
