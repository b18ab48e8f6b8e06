#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "ncd/decomp.hpp"
#include "ncd/errors.hpp"
#include "ncd/golden.hpp"

using namespace ncd;

namespace {

RootSystem rs_of(const std::string& label) { return RootSystem::from_label(TypeLabel::parse(label)); }

const NcPoset& nc_of(const std::string& label) {
  static std::map<std::string, NcPoset> cache;
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, NcPoset::enumerate(rs_of(label))).first;
  return it->second;
}

const DecompositionTable& table_of(const std::string& label) {
  static std::map<std::string, DecompositionTable> cache;
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, full_table(nc_of(label))).first;
  return it->second;
}

TypeTuple tup(const char* s) { return parse_tuple(s); }

}  // namespace

TEST(Decomp, ReferenceValuesSmallRanks) {
  for (const char* label : {"A1", "A2", "A3", "A4", "A5", "D4", "D5", "E6"}) {
    auto refs = reference_decomposition_numbers(TypeLabel::parse(label));
    ASSERT_FALSE(refs.empty()) << label;
    for (const auto& r : refs) {
      EXPECT_EQ(count_bruteforce(nc_of(label), r.tuple), r.value) << label << " " << tuple_str(r.tuple);
      EXPECT_EQ(table_of(label).value(r.tuple), r.value) << label << " " << tuple_str(r.tuple);
    }
  }
}

TEST(Decomp, BruteForceExamples) {
  EXPECT_EQ(count_bruteforce(nc_of("A3"), tup("A2,A1")), 4);
  EXPECT_EQ(count_bruteforce(nc_of("D4"), tup("A2,A2")), 6);
  EXPECT_EQ(count_bruteforce(nc_of("E6"), tup("A2,A2,A2")), 160);
  EXPECT_EQ(count_bruteforce(nc_of("A4"), tup("A2,A1")), 25);
  EXPECT_THROW(count_bruteforce(nc_of("A3"), tup("A3,A1")), InputError);
}

TEST(Decomp, TableMatchesSingleCounts) {
  for (const char* label : {"A3", "D4", "A1*A2"}) {
    const auto& t = table_of(label);
    for (const auto& [k, e] : t.entries()) EXPECT_EQ(count_bruteforce(nc_of(label), k), e.value) << tuple_str(k);
  }
}

TEST(Decomp, SmallTables) {
  const auto& a2 = table_of("A2");
  EXPECT_EQ(a2.size(), 3u);
  EXPECT_EQ(a2.value(tup("A2")), 1);
  EXPECT_EQ(a2.value(tup("A1")), 3);
  EXPECT_EQ(a2.value(tup("A1,A1")), 3);
}

TEST(Decomp, AllowedTypesAreSubdiagrams) {
  for (const char* label : {"A4", "D5", "E6"}) {
    auto sub = subdiagram_types(rs_of(label));
    sub.erase(TypeLabel());
    EXPECT_EQ(table_of(label).allowed_types(), sub) << label;
  }
}

TEST(Decomp, PermutationInvariance) {
  std::mt19937 rng(7);
  for (const char* label : {"A3", "D4", "E6"}) {
    for (const auto& [k, e] : table_of(label).entries()) {
      TypeTuple shuffled = k;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      EXPECT_EQ(count_bruteforce(nc_of(label), shuffled), e.value) << label << " " << tuple_str(shuffled);
    }
  }
}

TEST(Decomp, RankSumRelation) {
  for (const char* label : {"A4", "D4", "D5", "E6"}) {
    const auto& t = table_of(label);
    for (const auto& [k, e] : t.entries()) {
      int missing = t.rank() - tuple_rank(k);
      if (missing == 0) continue;
      Integer s = 0;
      for (const auto& m : all_types_of_rank(missing)) {
        TypeTuple ext = k;
        ext.push_back(m);
        s += t.value(ext);
      }
      EXPECT_EQ(s, e.value) << label << " " << tuple_str(k);
    }
  }
}

TEST(Decomp, ChainRelationInstance) {
  const auto& nc = nc_of("E7");
  auto n = [&](const char* s) { return count_bruteforce(nc, tup(s)); };
  Integer rhs = 2 * n("A1^2*A3,A1^2") + 3 * n("A2*A3,A1^2") + 5 * n("A1*A4,A1^2") + 9 * n("A1*D4,A1^2") +
                6 * n("A5,A1^2") + 4 * n("D5,A1^2");
  EXPECT_EQ(n("A1*A3,A1^2,A1"), rhs);
}

TEST(Decomp, TypeAClosedForm) {
  EXPECT_EQ(count_typeA(3, tup("A2,A1")), 4);
  EXPECT_EQ(count_typeA(4, tup("A2,A1,A1")), 25);
  EXPECT_EQ(count_typeA(4, tup("A2,A1")), 25);
  EXPECT_THROW(count_typeA(4, tup("D4")), InputError);
  for (int n = 1; n <= 5; ++n) {
    std::string label = "A" + std::to_string(n);
    for (const auto& [k, e] : table_of(label).entries()) EXPECT_EQ(count_typeA(n, k), e.value) << label << tuple_str(k);
  }
}

TEST(Decomp, ZeroRule) {
  EXPECT_EQ(count_bruteforce(nc_of("E7"), tup("A1^5,A2")), 0);
  EXPECT_EQ(count_bruteforce(nc_of("E8"), tup("A1^2*D4,A2")), 0);
  EXPECT_EQ(table_of("E6").value(tup("A1^4,A2")), 0);
}

TEST(Decomp, ProductRuleMatchesBruteForce) {
  for (auto [label, parts] : std::vector<std::pair<std::string, std::vector<std::string>>>{
           {"A1*A2", {"A1", "A2"}}, {"A1*A3", {"A1", "A3"}}, {"A1^2*A2", {"A1", "A1", "A2"}}}) {
    std::vector<const DecompositionTable*> factors;
    for (const auto& p : parts) factors.push_back(&table_of(p));
    auto prod = product_table(factors);
    const auto& brute = table_of(label);
    EXPECT_EQ(prod.allowed_types(), brute.allowed_types()) << label;
    for (const auto& [k, e] : brute.entries()) EXPECT_EQ(prod.value(k), e.value) << label << " " << tuple_str(k);
    EXPECT_EQ(prod.size(), brute.size());
  }
}

TEST(Decomp, ProductRuleExamples) {
  std::vector<const DecompositionTable*> a1d4{&table_of("A1"), &table_of("D4")};
  EXPECT_EQ(count_product(a1d4, tup("A1*A3,A1")), 9);
  std::vector<const DecompositionTable*> a1a1a3{&table_of("A1"), &table_of("A1"), &table_of("A3")};
  EXPECT_EQ(count_product(a1a1a3, tup("A1*A3,A1")), 2);
  EXPECT_EQ(count_product(a1d4, tup("A1*D4")), 1);
  EXPECT_THROW(count_product(a1d4, tup("A1")), InputError);
}

TEST(Decomp, SpecialValuesAgree) {
  for (const char* label : {"A3", "D4", "D5", "E6", "E7"}) {
    auto sv = special_values(rs_of(label));
    for (const auto& [k, e] : sv.entries()) EXPECT_EQ(count_bruteforce(nc_of(label), k), e.value) << label << tuple_str(k);
  }
  auto e7 = special_values(rs_of("E7"));
  EXPECT_EQ(e7.value(tup("E6,A1")), 9);
  EXPECT_EQ(e7.value(tup("A1*A2*A3,A1")), 9);
  EXPECT_EQ(e7.find(tup("A1^6,A1"))->value, 0);
}
