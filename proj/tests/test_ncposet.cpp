#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>

#include "ncd/errors.hpp"
#include "ncd/ncposet.hpp"

using namespace ncd;

namespace {

RootSystem rs_of(const char* label) { return RootSystem::from_label(TypeLabel::parse(label)); }

Poly chi_from(std::initializer_list<long> coeffs) {
  Poly p;
  int deg = static_cast<int>(coeffs.size()) - 1;
  for (long c : coeffs) p.add_term(Rational(c), {0, deg--, 0, 0});
  return p;
}

}  // namespace

TEST(NcPoset, SmallLevelSizes) {
  auto a2 = NcPoset::enumerate(rs_of("A2"));
  EXPECT_EQ(a2.size(), 5);
  EXPECT_EQ(a2.level_sizes(), (std::vector<int>{1, 3, 1}));
  auto a3 = NcPoset::enumerate(rs_of("A3"));
  EXPECT_EQ(a3.level_sizes(), (std::vector<int>{1, 6, 6, 1}));
  auto d4 = NcPoset::enumerate(rs_of("D4"));
  EXPECT_EQ(d4.size(), 50);
}

TEST(NcPoset, MatchesWholeGroupFilter) {
  for (const char* label : {"A2", "A3", "D4", "A1*A2"}) {
    auto rs = rs_of(label);
    auto nc = NcPoset::enumerate(rs);
    auto filtered = nc_by_group_filter(rs);
    ASSERT_EQ(filtered.size(), static_cast<std::size_t>(nc.size())) << label;
    for (const auto& w : filtered) EXPECT_GE(nc.index_of(w), 0) << label;
  }
}

TEST(NcPoset, ComplementIsRankReversingBijection) {
  auto nc = NcPoset::enumerate(rs_of("D5"));
  std::vector<int> hit(nc.size(), 0);
  for (int i = 0; i < nc.size(); ++i) {
    int j = nc.complement(i);
    EXPECT_EQ(nc.rank_of(i) + nc.rank_of(j), nc.rank());
    ++hit[j];
  }
  EXPECT_TRUE(std::all_of(hit.begin(), hit.end(), [](int h) { return h == 1; }));
}

TEST(NcPoset, TypeRankMatchesLength) {
  auto nc = NcPoset::enumerate(rs_of("E6"));
  for (int i = 0; i < nc.size(); ++i) EXPECT_EQ(nc.type_of(i).rank(), nc.rank_of(i));
  EXPECT_EQ(nc.type_of(nc.top()).str(), "E6");
  EXPECT_EQ(nc.type_of(nc.bottom()).str(), "0");
}

TEST(NcPoset, FactorsAgreeWithAbsoluteOrder) {
  auto nc = NcPoset::enumerate(rs_of("A3"));
  for (int w = 0; w < nc.size(); ++w) {
    std::vector<char> below(nc.size(), 0);
    for (const auto& f : nc.factors(w)) below[f.lower] = 1;
    for (int u = 0; u < nc.size(); ++u) EXPECT_EQ(static_cast<bool>(below[u]), nc.le(u, w));
  }
}

TEST(NcPoset, CacheRoundTrip) {
  auto dir = std::filesystem::temp_directory_path() / ("ncd-cache-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()));
  std::filesystem::remove_all(dir);
  auto rs = rs_of("D4");
  auto nc = NcPoset::enumerate(rs);
  write_cache(nc, dir);
  auto first = cache_path(dir, rs.label());
  std::ifstream a(first);
  std::string text_a((std::istreambuf_iterator<char>(a)), {});
  auto loaded = read_cache(rs, dir);
  ASSERT_TRUE(loaded.has_value());
  ASSERT_EQ(loaded->size(), nc.size());
  for (int i = 0; i < nc.size(); ++i) {
    EXPECT_EQ(loaded->element(i), nc.element(i));
    EXPECT_EQ(loaded->rank_of(i), nc.rank_of(i));
    EXPECT_EQ(loaded->type_of(i), nc.type_of(i));
  }
  write_cache(*loaded, dir);
  std::ifstream b(first);
  std::string text_b((std::istreambuf_iterator<char>(b)), {});
  EXPECT_EQ(text_a, text_b);
  EXPECT_FALSE(read_cache(rs_of("A4"), dir).has_value());
  std::filesystem::remove_all(dir);
}

TEST(NcPoset, CorruptCacheRejected) {
  auto dir = std::filesystem::temp_directory_path() / "ncd-cache-corrupt";
  std::filesystem::remove_all(dir);
  auto rs = rs_of("A3");
  write_cache(NcPoset::enumerate(rs), dir);
  auto path = cache_path(dir, rs.label());
  std::ifstream in(path);
  std::string text((std::istreambuf_iterator<char>(in)), {});
  in.close();
  auto pos = text.find(" 1 A1\n");
  ASSERT_NE(pos, std::string::npos);
  text.replace(pos, 6, " 1 A2\n");
  std::ofstream(path) << text;
  EXPECT_THROW(read_cache(rs, dir), ConsistencyError);
  std::filesystem::remove_all(dir);
}

TEST(Mobius, SmallValues) {
  ExplicitPoset chain;
  chain.rank = {0, 1};
  chain.le = {{1, 1}, {0, 1}};
  EXPECT_EQ(mobius(chain)[0][1], -1);
  auto a2 = NcPoset::enumerate(rs_of("A2"));
  auto mu = mobius(ExplicitPoset::from(a2));
  EXPECT_EQ(mu[a2.bottom()][a2.top()], 2);
  EXPECT_EQ(mobius_to_top(a2)[a2.bottom()], 2);
}

TEST(Characteristic, DirectSmall) {
  EXPECT_EQ(characteristic_direct(NcPoset::enumerate(rs_of("A3"))), chi_from({1, -6, 10, -5}));
  EXPECT_EQ(characteristic_direct(NcPoset::enumerate(rs_of("D4"))), chi_from({1, -12, 39, -48, 20}));
  EXPECT_EQ(characteristic_direct(NcPoset::enumerate(rs_of("A1*A2"))), chi_from({1, -1}) * chi_from({1, -3, 2}));
}

TEST(Characteristic, RecursionMatchesDirect) {
  ChiCatalog cat;
  for (const char* label : {"A1", "A2", "A3", "D4", "A4", "D5", "A5", "E6"}) {
    auto nc = NcPoset::enumerate(rs_of(label));
    auto rec = characteristic_recursive(TypeLabel::parse(label), full_rank_pairs(nc), cat);
    auto direct = characteristic_direct(nc);
    EXPECT_EQ(rec, direct) << label;
    EXPECT_EQ(direct.evaluate({0, 1, 0, 0}), 0);
    cat.set(TypeLabel::parse(label), direct);
  }
  EXPECT_EQ(characteristic_recursive(TypeLabel::parse("A1*A2"), {}, cat), chi_from({1, -1}) * chi_from({1, -3, 2}));
  ChiCatalog empty;
  auto a3 = NcPoset::enumerate(rs_of("A3"));
  EXPECT_THROW(characteristic_recursive(TypeLabel::parse("A3"), full_rank_pairs(a3), empty), DependencyError);
}

TEST(Zeta, DirectMatchesClosed) {
  for (const char* label : {"A1", "A2", "A3", "A4", "D4", "A1*A2"}) {
    auto t = TypeLabel::parse(label);
    auto nc = NcPoset::enumerate(rs_of(label));
    auto closed = zeta_closed(t, 1);
    for (int z = 1; z <= 5; ++z)
      EXPECT_EQ(Rational(zeta_direct(nc, z)), closed.evaluate({0, 0, Rational(z), 0})) << label << " z=" << z;
  }
  auto a2 = zeta_closed(TypeLabel::parse("A2"), 1);
  Poly z = Poly::variable(Var::z);
  EXPECT_EQ(a2, z * (z * Rational(3) - Poly(1)) * Rational(1, 2));
}

TEST(Ncm, SizesAndStructure) {
  auto a1 = NcPoset::enumerate(rs_of("A1"));
  for (int m = 1; m <= 3; ++m) {
    auto p = NcmPoset::build(a1, m);
    EXPECT_EQ(p.size(), m + 1);
  }
  auto a3 = NcPoset::enumerate(rs_of("A3"));
  auto p = NcmPoset::build(a3, 2);
  EXPECT_EQ(p.size(), 55);
  EXPECT_GE(p.minimal_count(), 2);
  auto d4 = NcPoset::enumerate(rs_of("D4"));
  EXPECT_EQ(NcmPoset::build(d4, 2).size(), 336);
  auto e6 = NcPoset::enumerate(rs_of("E6"));
  EXPECT_THROW(NcmPoset::build(e6, 3), ResourceGuardError);
}

TEST(Ncm, ZetaMatchesClosed) {
  for (auto [label, mmax] : std::vector<std::pair<const char*, int>>{{"A2", 3}, {"A3", 2}}) {
    auto nc = NcPoset::enumerate(rs_of(label));
    for (int m = 1; m <= mmax; ++m) {
      auto ex = ExplicitPoset::from(NcmPoset::build(nc, m));
      auto closed = zeta_closed(TypeLabel::parse(label), m);
      for (int z = 1; z <= 3; ++z)
        EXPECT_EQ(Rational(zeta_direct(ex, z)), closed.evaluate({0, 0, Rational(z), 0})) << label << m << z;
    }
  }
}

TEST(Zeta, MaximalChains) {
  for (const char* label : {"A3", "D4", "D5"}) {
    auto rs = rs_of(label);
    auto nc = NcPoset::enumerate(rs);
    // Chains e < x1 < ... < xn = c counted along the factor lists.
    std::vector<Integer> chains(nc.size(), 0);
    chains[nc.bottom()] = 1;
    for (int r = 1; r <= nc.rank(); ++r)
      for (int w : nc.levels()[r])
        for (const auto& f : nc.factors(w))
          if (nc.rank_of(f.lower) == r - 1) chains[w] += chains[f.lower];
    int n = rs.rank();
    Integer expected = factorial(n);
    for (int i = 0; i < n; ++i) expected *= rs.coxeter_number();
    EXPECT_EQ(chains[nc.top()] * rs.group_order(), expected) << label;
  }
}
