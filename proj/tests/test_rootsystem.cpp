#include <gtest/gtest.h>

#include "ncd/errors.hpp"
#include "ncd/rootsystem.hpp"

using namespace ncd;

TEST(RootSystem, PositiveRootCounts) {
  EXPECT_EQ(RootSystem::build('A', 1).positive_roots().size(), 1u);
  EXPECT_EQ(RootSystem::build('A', 5).positive_roots().size(), 15u);
  EXPECT_EQ(RootSystem::build('D', 4).positive_roots().size(), 12u);
  EXPECT_EQ(RootSystem::build('D', 7).positive_roots().size(), 42u);
  EXPECT_EQ(RootSystem::build('E', 6).positive_roots().size(), 36u);
  EXPECT_EQ(RootSystem::build('E', 7).positive_roots().size(), 63u);
  EXPECT_EQ(RootSystem::build('E', 8).positive_roots().size(), 120u);
}

TEST(RootSystem, GroupOrderAndCoxeterNumber) {
  auto e8 = RootSystem::build('E', 8);
  EXPECT_EQ(e8.group_order(), Integer("696729600"));
  EXPECT_EQ(e8.coxeter_number(), 30);
  EXPECT_EQ(RootSystem::build('E', 7).group_order(), Integer(2903040));
  EXPECT_EQ(RootSystem::build('D', 5).coxeter_number(), 8);
}

TEST(RootSystem, RejectsInvalidPairs) {
  EXPECT_THROW(RootSystem::build('D', 3), InputError);
  EXPECT_THROW(RootSystem::build('E', 9), InputError);
  EXPECT_THROW(RootSystem::build('B', 3), InputError);
  EXPECT_THROW(RootSystem::build('A', 0), InputError);
}

TEST(RootSystem, RootsClosedUnderSimpleReflections) {
  for (auto [f, r] : std::vector<std::pair<char, int>>{{'A', 4}, {'D', 5}, {'E', 7}}) {
    auto rs = RootSystem::build(f, r);
    for (const auto& a : rs.positive_roots()) {
      EXPECT_EQ(rs.inner(a, a), 2);
      for (int i = 0; i < r; ++i) {
        RootVec b = a;
        int p = rs.inner(a, rs.simple_root(i));
        b[i] = static_cast<std::int8_t>(b[i] - p);
        EXPECT_TRUE(rs.is_root(b));
      }
    }
  }
}

TEST(Diagram, ClassifiesShapes) {
  DynkinDiagram d(6);
  d.connect(0, 1);
  d.connect(1, 2);
  d.connect(2, 3);
  d.connect(2, 4);
  EXPECT_EQ(classify_diagram(d).str(), "A1*D5");
  DynkinDiagram e(7);
  for (int i = 0; i < 5; ++i) e.connect(i, i + 1);
  e.connect(2, 6);
  EXPECT_EQ(classify_diagram(e).str(), "E7");
  DynkinDiagram cyc(3);
  cyc.connect(0, 1);
  cyc.connect(1, 2);
  cyc.connect(2, 0);
  EXPECT_THROW(classify_diagram(cyc), ConsistencyError);
}

TEST(Subdiagrams, ExcludedTypes) {
  auto e7 = RootSystem::build('E', 7);
  EXPECT_FALSE(is_subdiagram_type(e7, TypeLabel::parse("A1^5")));
  EXPECT_TRUE(is_subdiagram_type(e7, TypeLabel::parse("A1^4")));
  auto e8 = RootSystem::build('E', 8);
  for (const char* t : {"A1^6", "A1^3*A3", "A2^3", "A1^2*D4"})
    EXPECT_FALSE(is_subdiagram_type(e8, TypeLabel::parse(t))) << t;
  EXPECT_TRUE(is_subdiagram_type(e8, TypeLabel::parse("A3*A4")));
  EXPECT_FALSE(is_subdiagram_type(e8, TypeLabel::parse("A4^2")));
  EXPECT_TRUE(is_subdiagram_type(e8, TypeLabel::parse("0")));
}

TEST(Subdiagrams, SingleNodeDeletions) {
  EXPECT_EQ(single_node_deletion_count(RootSystem::build('E', 6), TypeLabel::parse("D5")), 2);
  EXPECT_EQ(single_node_deletion_count(RootSystem::build('E', 8), TypeLabel::parse("E7")), 1);
  EXPECT_EQ(single_node_deletion_count(RootSystem::build('A', 2), TypeLabel::parse("A1")), 2);
  EXPECT_EQ(single_node_deletion_count(RootSystem::build('E', 7), TypeLabel::parse("A1^2*A4")), 0);
  EXPECT_THROW(single_node_deletion_count(RootSystem::build('E', 7), TypeLabel::parse("A5")), InputError);
}

TEST(TypeLabel, ParseAndPrint) {
  EXPECT_EQ(TypeLabel::parse("A3*A1^2").str(), "A1^2*A3");
  EXPECT_EQ(TypeLabel::parse("D3").str(), "A3");
  EXPECT_EQ(TypeLabel::parse("D2").str(), "A1^2");
  EXPECT_THROW(TypeLabel::parse("A"), InputError);
  EXPECT_THROW(TypeLabel::parse("E5"), InputError);
  EXPECT_THROW(TypeLabel::parse("A1*"), InputError);
  EXPECT_EQ(tuple_str(canonical(parse_tuple("A4,D4"))), "D4,A4");
  EXPECT_THROW(parse_tuple("A1,,A2"), InputError);
}

TEST(TypeLabel, TypesOfRank) {
  EXPECT_EQ(all_types_of_rank(1).size(), 1u);
  EXPECT_EQ(all_types_of_rank(3).size(), 3u);
  EXPECT_EQ(all_types_of_rank(4).size(), 6u);
  EXPECT_EQ(TypeLabel::parse("A1^2*A2").splittings().size(), 6u);
}
