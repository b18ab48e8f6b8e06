#pragma once

#include <map>
#include <string>
#include <utility>

#include "ncd/decomp.hpp"
#include "ncd/exact.hpp"
#include "ncd/ncposet.hpp"

namespace ncd {

// M-triangle of NC^m with m symbolic (or fixed, then m does not occur).
struct MTriangle {
  TypeLabel ambient;
  int n = 0;
  Poly dual;    // in x, y, m
  Poly primal;  // (xy)^n dual(1/x, 1/y)
};

// (xy)^n p(1/x, 1/y); throws if p has degree above n in x or y.
Poly invert_xy(const Poly& p, int n);

// Sum over tuples of N * x^{rank} * prod chi*(y) * binom(m, d), ordered
// tuples counted through the canonical multiset and its orderings.
MTriangle assemble_dual(const TypeLabel& ambient, const DecompositionTable& table, const ChiCatalog& chi);

// Same polynomial from chains e < v_1 < ... < v_d <= c in NC, weighted by
// chi* of the interval types; does not need the tuple table.
MTriangle assemble_dual_chains(const NcPoset& nc, const ChiCatalog& chi);

MTriangle mtriangle_at(const MTriangle& mt, int m);

// Sum of mu(u, w) x^{rk u} y^{rk w} over the explicit order of NC^m.
Poly mtriangle_direct(const NcmPoset& ncm);

// Right side minus left side of the multichain identity for the ambient,
// as a polynomial in z and m.
Poly zeta_identity_difference(const TypeLabel& ambient, const DecompositionTable& table);

// y^n M^{-m}(xy, 1/y) - M^m(x, y).
Poly reciprocity_difference(const MTriangle& mt);

struct FTriangleCandidate {
  TypeLabel ambient;
  int m = 0;
  int n = 0;
  Poly poly;  // in x, y
  Poly remainder;
  bool exact = false;

  std::map<std::pair<int, int>, Rational> coefficients() const;
  Rational f(int k, int l) const;
  bool nonnegative_integers() const;
  bool f00_is_one() const;
  bool support_in_triangle() const;
  bool valid() const { return exact && nonnegative_integers() && f00_is_one() && support_in_triangle(); }
};

// F(x, y) = y^n M((1 + y)/(y - x), (y - x)/y) at the given m (negative m is
// allowed as a formal substitution).
FTriangleCandidate fm_transform(const MTriangle& mt, int m);

struct FReciprocity {
  bool transform_identity = false;  // F^m = (1+x)^n F^{-m}(-x/(1+x), (y-x)/(1+x))
  bool top_face_count = false;      // f_{n,0}(m) = sum (-1)^k f_k(-m)
  bool coefficientwise = false;     // every f_{k,l}(m) from the f_{r,s}(-m)
  bool all() const { return transform_identity && top_face_count && coefficientwise; }
};

FReciprocity f_reciprocity_checks(const MTriangle& mt, int m);

}  // namespace ncd
