#include <gtest/gtest.h>

#include "ncd/errors.hpp"
#include "ncd/golden.hpp"
#include "ncd/triangles.hpp"

using namespace ncd;

namespace {

const NcPoset& nc_of(const std::string& label) {
  static std::map<std::string, NcPoset> cache;
  auto it = cache.find(label);
  if (it == cache.end())
    it = cache.emplace(label, NcPoset::enumerate(RootSystem::from_label(TypeLabel::parse(label)))).first;
  return it->second;
}

const DecompositionTable& table_of(const std::string& label) {
  static std::map<std::string, DecompositionTable> cache;
  auto it = cache.find(label);
  if (it == cache.end()) it = cache.emplace(label, full_table(nc_of(label))).first;
  return it->second;
}

const ChiCatalog& chi() {
  static ChiCatalog c = [] {
    ChiCatalog out;
    for (const char* t : {"A1", "A2", "A3", "A4", "D4"}) out.set(TypeLabel::parse(t), characteristic_direct(nc_of(t)));
    return out;
  }();
  return c;
}

MTriangle symbolic(const std::string& label) { return assemble_dual(TypeLabel::parse(label), table_of(label), chi()); }

Poly X() { return Poly::variable(Var::x); }
Poly Y() { return Poly::variable(Var::y); }
Poly M() { return Poly::variable(Var::m); }

}  // namespace

TEST(Triangles, A1ClosedForms) {
  MTriangle mt = symbolic("A1");
  EXPECT_EQ(mt.dual, Poly(1) + M() * X() * (Y() - Poly(1)));
  EXPECT_EQ(mt.primal, X() * Y() - M() * Y() + M());
  EXPECT_EQ(mtriangle_at(mt, 1).primal, Poly(1) - Y() + X() * Y());
  EXPECT_EQ(fm_transform(mt, 1).poly, Poly(1) + X() + Y());
  EXPECT_EQ(fm_transform(mt, 2).poly, Poly(1) + X() * Poly(2) + Y());
}

TEST(Triangles, InvertIsAnInvolution) {
  MTriangle mt = symbolic("A3");
  EXPECT_EQ(invert_xy(mt.primal, 3), mt.dual);
  EXPECT_THROW(invert_xy(X().pow(4), 3), ConsistencyError);
}

TEST(Triangles, DualShape) {
  for (const char* label : {"A2", "A3", "D4"}) {
    MTriangle mt = symbolic(label);
    EXPECT_EQ(mt.dual.coefficient({0, 0, 0, 0}), 1) << label;
    EXPECT_LE(mt.dual.degree(Var::x), mt.n);
    EXPECT_LE(mt.dual.degree(Var::y), mt.n);
    // At m = 0 only the empty tuple survives.
    EXPECT_EQ(mt.dual.substitute_point(Var::m, 0), Poly(1)) << label;
    // x = 0 slice of the dual is 1 for every m.
    EXPECT_EQ(mt.dual.substitute_point(Var::x, 0), Poly(1)) << label;
    // At m = 1 only the one-entry tuple (ambient) reaches x^n y^n.
    MTriangle one = mtriangle_at(mt, 1);
    EXPECT_EQ(one.dual.coefficient({mt.n, mt.n, 0, 0}), 1) << label;
  }
}

TEST(Triangles, DirectMobiusMatchesAssembly) {
  const std::vector<std::pair<std::string, int>> cases = {{"A2", 3}, {"A3", 3}, {"D4", 2}, {"A1*A2", 2}};
  for (const auto& [label, top] : cases) {
    TypeLabel t = TypeLabel::parse(label);
    MTriangle mt;
    if (t.is_irreducible()) {
      mt = symbolic(label);
    } else {
      std::vector<const DecompositionTable*> f{&table_of("A1"), &table_of("A2")};
      mt = assemble_dual(t, product_table(f), chi());
    }
    for (int m = 1; m <= top; ++m) {
      NcmPoset ncm = NcmPoset::build(nc_of(label), m);
      EXPECT_EQ(mtriangle_direct(ncm), mtriangle_at(mt, m).primal) << label << " m=" << m;
    }
  }
}

TEST(Triangles, ChainPathMatchesTablePath) {
  for (const char* label : {"A3", "A4", "D4"}) {
    EXPECT_EQ(assemble_dual_chains(nc_of(label), chi()).dual, symbolic(label).dual) << label;
  }
}

TEST(Triangles, ZetaIdentity) {
  for (const char* label : {"A1", "A2", "A3", "D4"})
    EXPECT_TRUE(zeta_identity_difference(TypeLabel::parse(label), table_of(label)).is_zero()) << label;
}

TEST(Triangles, ZetaIdentityDetectsWrongTable) {
  DecompositionTable t = table_of("A3");
  t.set(parse_tuple("A2,A1"), 5, Provenance::bruteforce);
  EXPECT_FALSE(zeta_identity_difference(TypeLabel::parse("A3"), t).is_zero());
}

TEST(Triangles, Reciprocity) {
  for (const char* label : {"A1", "A2", "A3", "A4", "D4"}) EXPECT_TRUE(reciprocity_difference(symbolic(label)).is_zero()) << label;
}

TEST(Triangles, FTransformProperties) {
  for (const char* label : {"A2", "A3", "D4"}) {
    MTriangle mt = symbolic(label);
    for (int m = 1; m <= 3; ++m) {
      FTriangleCandidate f = fm_transform(mt, m);
      EXPECT_TRUE(f.valid()) << label << " m=" << m;
      // Facets with only positive roots are the positive Fuss-Catalan number.
      Rational pos = 1;
      for (int d : degrees_of(TypeLabel::parse(label)))
        pos *= Rational(m * RootSystem::from_label(TypeLabel::parse(label)).coxeter_number() + d - 2) / d;
      EXPECT_EQ(f.f(mt.n, 0), pos) << label << " m=" << m;
    }
  }
}

TEST(Triangles, FTransformRejectsBrokenTriangle) {
  MTriangle mt = symbolic("A2");
  mt.primal += X();
  FTriangleCandidate f = fm_transform(mt, 1);
  EXPECT_FALSE(f.valid());
}

TEST(Triangles, FReciprocity) {
  for (const char* label : {"A1", "A2", "A3", "D4"})
    for (int m = 1; m <= 2; ++m) EXPECT_TRUE(f_reciprocity_checks(symbolic(label), m).all()) << label << " m=" << m;
}

TEST(Triangles, MissingEntryIsDependencyError) {
  DecompositionTable partial(TypeLabel::parse("A2"), {TypeLabel::parse("A1"), TypeLabel::parse("A2")});
  partial.set(parse_tuple("A2"), 1, Provenance::bruteforce);
  EXPECT_THROW(assemble_dual(TypeLabel::parse("A2"), partial, chi()), DependencyError);
}
