#include <gtest/gtest.h>

#include <random>

#include "ncd/exact.hpp"

using namespace ncd;

namespace {

Poly X() { return Poly::variable(Var::x); }
Poly Y() { return Poly::variable(Var::y); }
Poly Z() { return Poly::variable(Var::z); }
Poly M() { return Poly::variable(Var::m); }

Rational q(long a, long b) {
  Rational r(a, b);
  r.canonicalize();
  return r;
}

Poly random_poly(std::mt19937& rng, int terms, int deg) {
  std::uniform_int_distribution<int> e(0, deg), c(-5, 5);
  Poly p;
  for (int i = 0; i < terms; ++i) p.add_term(q(c(rng), 1 + (i % 3)), {e(rng), e(rng), 0, e(rng) % 2});
  return p;
}

}  // namespace

TEST(Exact, FactorialBinomial) {
  EXPECT_EQ(factorial(0), 1);
  EXPECT_EQ(factorial(20), Integer("2432902008176640000"));
  EXPECT_EQ(binomial(10, 3), 120);
  EXPECT_EQ(binomial(3, 5), 0);
}

TEST(Exact, PrintingIsCanonical) {
  Poly chi = Y().pow(3) - Poly(6) * Y().pow(2) + Poly(10) * Y() - Poly(5);
  EXPECT_EQ(chi.str(), "y^3 - 6*y^2 + 10*y - 5");
  EXPECT_EQ(Poly().str(), "0");
  EXPECT_EQ((X() * Y() * Rational(1, 2) - M()).str(), "1/2*x*y - m");
}

TEST(Exact, RingAxiomsOnRandomPolys) {
  std::mt19937 rng(7);
  for (int it = 0; it < 30; ++it) {
    Poly a = random_poly(rng, 5, 3), b = random_poly(rng, 4, 3), c = random_poly(rng, 3, 2);
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ((a - a), Poly());
    EXPECT_EQ((a * b) * c, a * (b * c));
  }
}

TEST(Exact, DivisionReconstructs) {
  std::mt19937 rng(11);
  for (int it = 0; it < 20; ++it) {
    Poly a = random_poly(rng, 6, 4), b = random_poly(rng, 3, 2);
    if (b.is_zero()) continue;
    DivisionResult d = divide(a * b, b);
    EXPECT_TRUE(d.remainder.is_zero());
    EXPECT_EQ(d.quotient, a);
    DivisionResult e = divide(a, b);
    EXPECT_EQ(e.quotient * b + e.remainder, a);
  }
}

TEST(Exact, BinomialPoly) {
  Poly b3 = binomial_poly(3);
  for (int m = -3; m <= 6; ++m) {
    Rational expect = Rational(m) * (m - 1) * (m - 2) / 6;
    EXPECT_EQ(b3.evaluate({0, 0, 0, Rational(m)}), expect);
  }
  EXPECT_EQ(binomial_poly(0), Poly(1));
}

TEST(Exact, SubstituteAndCoefficients) {
  Poly p = (Z() - Poly(1)).pow(3);
  EXPECT_EQ(p.coefficient({0, 0, 1, 0}), 3);
  EXPECT_EQ(p.substitute(Var::z, Z() + Poly(1)), Z().pow(3));
  EXPECT_EQ(p.substitute_point(Var::z, 3), Poly(8));
  Poly q = M() * X() + M() * M() * Y();
  EXPECT_EQ(q.coefficient_of({{Var::m, 2}}), Y());
}

TEST(Exact, RationalSubstitutionExactAndInexact) {
  // x -> 1/(1 - y) times (1 - y)^2 on x^2 + x gives 1 + (1 - y).
  std::map<Var, RationalSubstitution> subs;
  subs[Var::x] = {Poly(1), Poly(1) - Y(), -1};
  auto r = substitute_rational(X().pow(2) + X(), subs, (Poly(1) - Y()).pow(2));
  EXPECT_TRUE(r.exact);
  EXPECT_EQ(r.value, Poly(2) - Y());
  auto s = substitute_rational(X().pow(2), subs, Poly(1));
  EXPECT_FALSE(s.exact);
}

TEST(Exact, SolveSmallSystem) {
  LinearSystem sys;
  sys.variables = {"a", "b", "c"};
  sys.rows.push_back({{{0, 1}, {1, 1}}, 3, "r1"});
  sys.rows.push_back({{{1, 1}, {2, -1}}, 1, "r2"});
  sys.rows.push_back({{{0, 2}, {1, 2}}, 6, "r3"});
  SolutionSpace s = solve(sys);
  EXPECT_EQ(s.rank, 2);
  EXPECT_EQ(s.dimension, 1);
  ASSERT_EQ(s.free_columns.size(), 1u);
  EXPECT_EQ(s.free_columns[0], 2);
  for (const auto& row : sys.rows) {
    EXPECT_EQ(row_value(row, s.particular), row.rhs);
    EXPECT_EQ(row_value(row, s.nullspace[0]), 0);
  }
}

TEST(Exact, InconsistentSystemNamesRows) {
  LinearSystem sys;
  sys.variables = {"a", "b"};
  sys.rows.push_back({{{0, 1}, {1, 1}}, 1, "first"});
  sys.rows.push_back({{{0, 1}, {1, 1}}, 2, "second"});
  try {
    solve(sys);
    FAIL() << "expected inconsistency";
  } catch (const InconsistentSystem& e) {
    EXPECT_FALSE(e.provenances.empty());
  }
}

TEST(Exact, TallRandomSystemMatchesPlantedSolution) {
  // Many more rows than unknowns exercises the modular row selection.
  std::mt19937 rng(3);
  std::uniform_int_distribution<int> c(-4, 4);
  const int n = 12;
  std::vector<Rational> planted(n);
  for (auto& v : planted) v = q(c(rng), 1 + (c(rng) & 1));
  LinearSystem sys;
  for (int j = 0; j < n; ++j) sys.variables.push_back("v" + std::to_string(j));
  for (int i = 0; i < 200; ++i) {
    LinearRow row;
    for (int j = 0; j < n - 2; ++j)  // the last two unknowns stay free
      if (int k = c(rng)) row.coefficients.emplace_back(j, Rational(k));
    row.rhs = row_value(row, planted);
    row.provenance = "row " + std::to_string(i);
    sys.rows.push_back(std::move(row));
  }
  SolutionSpace s = solve(sys);
  EXPECT_EQ(s.dimension, 2);
  for (int j = 0; j < n - 2; ++j) EXPECT_EQ(s.particular[j], planted[j]);
  sys.rows.push_back({{{0, 1}}, planted[0] + 1, "bad"});
  EXPECT_THROW(solve(sys), InconsistentSystem);
}
