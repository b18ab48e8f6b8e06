#include <gtest/gtest.h>

#include <deque>
#include <set>
#include <unordered_map>

#include "ncd/errors.hpp"
#include "ncd/weyl.hpp"

using namespace ncd;

namespace {

// Word length in the reflection generators by breadth-first search.
std::unordered_map<GroupElement, int, GroupElementHash> reflection_bfs(const RootSystem& rs) {
  std::vector<GroupElement> gens;
  for (const auto& a : rs.positive_roots()) gens.push_back(reflection(rs, a));
  std::unordered_map<GroupElement, int, GroupElementHash> dist;
  auto e = GroupElement::identity(rs.rank());
  dist[e] = 0;
  std::deque<GroupElement> q{e};
  while (!q.empty()) {
    auto g = q.front();
    q.pop_front();
    for (const auto& t : gens) {
      auto h = g * t;
      if (dist.emplace(h, dist[g] + 1).second) q.push_back(h);
    }
  }
  return dist;
}

}  // namespace

TEST(Weyl, ReflectionLengthMatchesBfs) {
  for (auto [f, r] : std::vector<std::pair<char, int>>{{'A', 3}, {'D', 4}}) {
    auto rs = RootSystem::build(f, r);
    auto dist = reflection_bfs(rs);
    EXPECT_EQ(Integer(static_cast<long>(dist.size())), rs.group_order());
    for (const auto& [g, d] : dist) EXPECT_EQ(absolute_length(g), d);
  }
}

TEST(Weyl, InverseAndForm) {
  auto rs = RootSystem::build('E', 7);
  auto c = bipartite_coxeter(rs);
  EXPECT_TRUE(preserves_form(rs, c));
  EXPECT_TRUE((inverse(rs, c) * c).is_identity());
  EXPECT_EQ(absolute_length(c), 7);
  EXPECT_EQ(multiplicative_order(c), 18);
}

TEST(Weyl, ReflectionsAreInvolutions) {
  auto rs = RootSystem::build('D', 5);
  for (const auto& a : rs.positive_roots()) {
    auto t = reflection(rs, a);
    EXPECT_TRUE((t * t).is_identity());
    EXPECT_EQ(absolute_length(t), 1);
  }
  RootVec bad{};
  bad[0] = 2;
  EXPECT_THROW(reflection(rs, bad), InputError);
}

TEST(Weyl, ParabolicTypes) {
  auto rs = RootSystem::build('D', 4);
  auto c = bipartite_coxeter(rs);
  EXPECT_EQ(classify_parabolic_type(rs, c, c).str(), "D4");
  EXPECT_EQ(classify_parabolic_type(rs, GroupElement::identity(4), c).str(), "0");
  auto t = reflection(rs, rs.positive_roots().back());
  EXPECT_EQ(classify_parabolic_type(rs, t, c).str(), "A1");
  auto w = simple_reflection(rs, 0) * simple_reflection(rs, 0);
  EXPECT_EQ(classify_parabolic_type(rs, w, c).str(), "0");
}

TEST(Weyl, OrbitSizes) {
  auto sizes = [](const char* label) {
    auto t = TypeLabel::parse(label);
    auto rs = RootSystem::build(t.components()[0].family, t.components()[0].rank);
    std::multiset<int> s;
    for (const auto& o : reflection_orbits(rs)) s.insert(o.size);
    return s;
  };
  EXPECT_EQ(sizes("E6"), (std::multiset<int>{6, 6, 12, 12}));
  auto e7 = sizes("E7");
  EXPECT_EQ(e7.size(), 7u);
  EXPECT_EQ(e7.count(9), 7u);
  auto e8 = sizes("E8");
  EXPECT_EQ(e8.size(), 8u);
  EXPECT_EQ(e8.count(15), 8u);
  auto d6 = sizes("D6");
  EXPECT_EQ(d6.count(5), 6u);
}
