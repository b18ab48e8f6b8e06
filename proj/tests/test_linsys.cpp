#include <gtest/gtest.h>

#include <json.hpp>

#include "ncd/errors.hpp"
#include "ncd/linsys.hpp"

using namespace ncd;

namespace {

RootSystem rs_of(const std::string& label) { return RootSystem::from_label(TypeLabel::parse(label)); }

TableCatalog& catalog() {
  static TableCatalog cat(4);
  return cat;
}

const ReplayReport& report_of(const std::string& label) {
  static std::map<std::string, ReplayReport> cache;
  auto it = cache.find(label);
  if (it == cache.end()) {
    const auto& brute = catalog().get(TypeLabel::parse(label));
    it = cache.emplace(label, replay(rs_of(label), catalog(), brute)).first;
  }
  return it->second;
}

const Assertion* find_assertion(const ReplayReport& r, const std::string& prefix) {
  for (const auto& a : r.assertions)
    if (a.description.rfind(prefix, 0) == 0) return &a;
  return nullptr;
}

}  // namespace

TEST(Linsys, A2HasUniqueSolution) {
  auto g = generate_equations(rs_of("A2"), catalog());
  ASSERT_EQ(g.unknowns.size(), 2u);
  auto sol = solve(g.system);
  EXPECT_EQ(sol.dimension, 0);
  EXPECT_EQ(sol.particular[g.variable(parse_tuple("A2"))], 1);
  EXPECT_EQ(sol.particular[g.variable(parse_tuple("A1,A1"))], 3);
}

TEST(Linsys, OracleSatisfiesEveryEquation) {
  for (const char* label : {"A3", "A4", "D4", "D5", "D6", "E6"}) {
    auto g = generate_equations(rs_of(label), catalog());
    auto x = oracle_vector(g, catalog().get(TypeLabel::parse(label)));
    for (const auto& row : g.system.rows) EXPECT_EQ(row_value(row, x), row.rhs) << label << " " << row.provenance;
  }
}

TEST(Linsys, MultichainComparisonCount) {
  // All (n+1)^2 coefficients of m^i z^j are compared, trivial ones included.
  auto g = generate_equations(rs_of("D4"), catalog());
  int total = g.family_rows["multichain"] + g.family_rows["multichain-trivial"];
  EXPECT_EQ(total, 25);
}

TEST(Linsys, UniqueForSmallTypes) {
  for (const char* label : {"A3", "A4", "A5", "D4", "D5"}) {
    const auto& r = report_of(label);
    EXPECT_EQ(r.dimension, 0) << label;
    EXPECT_TRUE(r.passed()) << label;
    EXPECT_TRUE(r.pins.empty()) << label;
  }
}

TEST(Linsys, E6OneDimensional) {
  const auto& r = report_of("E6");
  EXPECT_EQ(r.dimension, 1);
  ASSERT_EQ(r.pins.size(), 1u);
  EXPECT_EQ(tuple_str(r.pins[0].first), "A1^3,A1^3");
  EXPECT_EQ(r.pins[0].second, 12);
  EXPECT_TRUE(r.passed());
}

TEST(Linsys, D6TwoDimensional) {
  const auto& r = report_of("D6");
  EXPECT_EQ(r.dimension, 2);
  ASSERT_EQ(r.pins.size(), 2u);
  EXPECT_EQ(r.pins[0].second, 0);
  EXPECT_EQ(r.pins[1].second, 5);
  EXPECT_FALSE(r.dimension_relaxed);
  EXPECT_TRUE(r.passed());
}

TEST(Linsys, D7RelaxedDimension) {
  const auto& r = report_of("D7");
  EXPECT_LE(r.dimension, 2);
  EXPECT_EQ(r.dimension_relaxed, r.dimension < 2);
  EXPECT_TRUE(r.passed());
  const auto* a = find_assertion(r, "D7 3X + Y = 36");
  ASSERT_NE(a, nullptr);
  EXPECT_TRUE(a->pass);
}

TEST(Linsys, ZeroAllForbiddenNeverIncreasesDimension) {
  for (const char* label : {"E6", "D6"}) {
    LinsysOptions opt;
    opt.zero_all_forbidden = true;
    auto strict = solve(generate_equations(rs_of(label), catalog(), opt).system);
    EXPECT_LE(strict.dimension, report_of(label).dimension) << label;
  }
}

TEST(Linsys, FinalTableNonnegativeIntegers) {
  for (const char* label : {"D6", "E6"}) {
    const auto& t = report_of(label).final_table;
    ASSERT_GT(t.size(), 0u);
    for (const auto& [k, e] : t.entries()) {
      EXPECT_GE(e.value, 0) << tuple_str(k);
      EXPECT_EQ(e.provenance, Provenance::linear_system);
    }
  }
}

TEST(Linsys, ReportJsonShape) {
  auto j = nlohmann::json::parse(report_json(report_of("E6")));
  EXPECT_EQ(j["ambient"], "E6");
  EXPECT_EQ(j["dimension"], 1);
  EXPECT_EQ(j["expected_dimension"], 1);
  EXPECT_EQ(j["pins"].size(), 1u);
  EXPECT_TRUE(j["passed"].get<bool>());
  EXPECT_EQ(j["table"].size(), 53u);
}

TEST(Linsys, InconsistentPinDetected) {
  // A false value for the free entry of E6 is rejected by the congruence
  // and by the comparison with the brute-force table.
  DecompositionTable fake = catalog().get(TypeLabel::parse("E6"));
  fake.set(parse_tuple("A1^3,A1^3"), 112, Provenance::bruteforce);
  auto r = replay(rs_of("E6"), catalog(), fake);
  EXPECT_FALSE(r.passed());
  const auto* a = find_assertion(r, "brute-force table satisfies");
  ASSERT_NE(a, nullptr);
  EXPECT_FALSE(a->pass);
}

TEST(Linsys, ExpectedDimensions) {
  EXPECT_EQ(expected_dimension(TypeLabel::parse("E6")), 1);
  EXPECT_EQ(expected_dimension(TypeLabel::parse("D6")), 2);
  EXPECT_EQ(expected_dimension(TypeLabel::parse("E7")), 2);
  EXPECT_EQ(expected_dimension(TypeLabel::parse("E8")), 4);
  EXPECT_EQ(expected_dimension(TypeLabel::parse("A5")), 0);
}

TEST(Linsys, ReducibleAmbientRejected) {
  EXPECT_THROW(generate_equations(rs_of("A1*A2"), catalog()), InputError);
}
