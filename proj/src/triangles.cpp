#include "ncd/triangles.hpp"

#include "ncd/errors.hpp"

namespace ncd {

Poly invert_xy(const Poly& p, int n) {
  Poly out;
  for (const auto& [k, c] : p.terms()) {
    Exponents e = Poly::unpack(k);
    if (e[0] > n || e[1] > n) throw ConsistencyError("triangle has degree above the rank");
    e[0] = n - e[0];
    e[1] = n - e[1];
    out.add_term(c, e);
  }
  return out;
}

namespace {

Poly x_power(int k) { return Poly::variable(Var::x, k); }

MTriangle finish(const TypeLabel& ambient, Poly dual) {
  MTriangle mt;
  mt.ambient = ambient;
  mt.n = ambient.rank();
  mt.primal = invert_xy(dual, mt.n);
  mt.dual = std::move(dual);
  return mt;
}

}  // namespace

MTriangle assemble_dual(const TypeLabel& ambient, const DecompositionTable& table, const ChiCatalog& chi) {
  const int n = ambient.rank();
  std::vector<Poly> binom;
  for (int d = 0; d <= n; ++d) binom.push_back(binomial_poly(d));
  Poly dual(1);
  for (int r = 1; r <= n; ++r) {
    for (const auto& t : tuples_of_rank(table.allowed_types(), r)) {
      Integer v = table.value(t);
      if (v == 0) continue;
      Poly term = binom[t.size()] * x_power(r) * Rational(v * Integer(std::to_string(orderings(t))));
      for (const auto& x : t) term *= chi.get(x);
      dual += term;
    }
  }
  return finish(ambient, std::move(dual));
}

MTriangle assemble_dual_chains(const NcPoset& nc, const ChiCatalog& chi) {
  const int n = nc.rank();
  std::vector<Poly> type_chi;
  for (const auto& t : nc.type_names()) type_chi.push_back(t.empty() ? Poly(1) : chi.get(t));
  // g[v] = sum over chains of length d ending in v of prod chi*(y).
  std::vector<Poly> g(nc.size());
  g[nc.bottom()] = Poly(1);
  Poly dual(1);
  for (int d = 1; d <= n; ++d) {
    std::vector<Poly> next(nc.size());
    bool any = false;
    for (int v = 0; v < nc.size(); ++v) {
      for (const auto& f : nc.factors(v)) {
        if (f.lower == v || g[f.lower].is_zero()) continue;
        next[v] += g[f.lower] * type_chi[nc.type_id(f.rest)];
      }
    }
    Poly level;
    for (int v = 0; v < nc.size(); ++v) {
      if (next[v].is_zero()) continue;
      any = true;
      level += next[v] * x_power(nc.rank_of(v));
    }
    if (!any) break;
    dual += level * binomial_poly(d);
    g = std::move(next);
  }
  return finish(nc.ambient().label(), std::move(dual));
}

MTriangle mtriangle_at(const MTriangle& mt, int m) {
  MTriangle out = mt;
  out.dual = mt.dual.substitute_point(Var::m, m);
  out.primal = mt.primal.substitute_point(Var::m, m);
  return out;
}

Poly mtriangle_direct(const NcmPoset& ncm) {
  ExplicitPoset p = ExplicitPoset::from(ncm);
  auto mu = mobius(p);
  Poly out;
  for (std::size_t u = 0; u < p.size(); ++u)
    for (std::size_t w = 0; w < p.size(); ++w)
      if (mu[u][w] != 0) out.add_term(Rational(static_cast<long>(mu[u][w])), {p.rank[u], p.rank[w], 0, 0});
  return out;
}

Poly zeta_identity_difference(const TypeLabel& ambient, const DecompositionTable& table) {
  const int n = ambient.rank();
  const Poly shift = Poly::variable(Var::z) - Poly(1);
  std::map<TypeLabel, Poly> zeta;
  for (const auto& t : table.allowed_types()) zeta.emplace(t, zeta_closed(t, 1).substitute(Var::z, shift));
  Poly rhs(1);
  for (int r = 1; r <= n; ++r) {
    for (const auto& t : tuples_of_rank(table.allowed_types(), r)) {
      Integer v = table.value(t);
      if (v == 0) continue;
      Poly term = binomial_poly(static_cast<int>(t.size())) * Rational(v * Integer(std::to_string(orderings(t))));
      for (const auto& x : t) term *= zeta.at(x);
      rhs += term;
    }
  }
  return rhs - zeta_closed(ambient, std::nullopt);
}

Poly reciprocity_difference(const MTriangle& mt) {
  Poly lhs;
  for (const auto& [k, c] : mt.primal.terms()) {
    Exponents e = Poly::unpack(k);
    // x^a y^b m^j -> (-1)^j m^j x^a y^{n + a - b}
    Rational coef = e[3] % 2 ? Rational(-c) : c;
    int ye = mt.n + e[0] - e[1];
    if (ye < 0) throw ConsistencyError("M-triangle term outside the triangle");
    lhs.add_term(coef, {e[0], ye, e[2], e[3]});
  }
  return lhs - mt.primal;
}

std::map<std::pair<int, int>, Rational> FTriangleCandidate::coefficients() const {
  std::map<std::pair<int, int>, Rational> out;
  for (const auto& [k, c] : poly.terms()) {
    Exponents e = Poly::unpack(k);
    out[{e[0], e[1]}] += c;
  }
  return out;
}

Rational FTriangleCandidate::f(int k, int l) const { return poly.coefficient({k, l, 0, 0}); }

bool FTriangleCandidate::nonnegative_integers() const {
  for (const auto& [k, c] : poly.terms())
    if (c < 0 || c.get_den() != 1) return false;
  return true;
}

bool FTriangleCandidate::f00_is_one() const { return f(0, 0) == 1; }

bool FTriangleCandidate::support_in_triangle() const {
  for (const auto& [k, c] : poly.terms()) {
    Exponents e = Poly::unpack(k);
    if (e[0] + e[1] > n || e[2] != 0 || e[3] != 0) return false;
  }
  return true;
}

FTriangleCandidate fm_transform(const MTriangle& mt, int m) {
  Poly primal = mt.primal.substitute_point(Var::m, m);
  const Poly x = Poly::variable(Var::x), y = Poly::variable(Var::y);
  std::map<Var, RationalSubstitution> subs;
  subs[Var::x] = {Poly(1) + y, y - x, mt.n};
  subs[Var::y] = {y - x, y, mt.n};
  SubstitutionResult r = substitute_rational(primal, subs, y.pow(mt.n));
  FTriangleCandidate f;
  f.ambient = mt.ambient;
  f.m = m;
  f.n = mt.n;
  f.poly = std::move(r.value);
  f.remainder = std::move(r.remainder);
  f.exact = r.exact;
  return f;
}

FReciprocity f_reciprocity_checks(const MTriangle& mt, int m) {
  FReciprocity out;
  const int n = mt.n;
  FTriangleCandidate fp = fm_transform(mt, m);
  FTriangleCandidate fn = fm_transform(mt, -m);
  if (!fp.exact || !fn.exact) return out;

  const Poly x = Poly::variable(Var::x), y = Poly::variable(Var::y);
  std::map<Var, RationalSubstitution> subs;
  subs[Var::x] = {-x, Poly(1) + x, n};
  subs[Var::y] = {y - x, Poly(1) + x, n};
  SubstitutionResult r = substitute_rational(fn.poly, subs, (Poly(1) + x).pow(n));
  out.transform_identity = r.exact && r.value == fp.poly;

  Rational alt = 0;
  for (int k = 0; k <= n; ++k) {
    Rational fk = 0;
    for (int l = 0; l <= k; ++l) fk += fn.f(l, k - l);
    alt += k % 2 ? Rational(-fk) : fk;
  }
  out.top_face_count = fp.f(n, 0) == alt;

  auto binom = [](int a, int b) -> Rational {
    if (a < 0 || b < 0 || b > a) return 0;
    return Rational(binomial(a, b));
  };
  bool ok = true;
  for (int k = 0; k <= n && ok; ++k)
    for (int l = 0; k + l <= n && ok; ++l) {
      Rational s = 0;
      for (int r = 0; r <= n; ++r)
        for (int q = 0; r + q <= n; ++q) {
          Rational c = binom(n - r - q, k + l - r - q) * binom(q, l) * fn.f(r, q);
          s += (r + q + l) % 2 ? Rational(-c) : c;
        }
      ok = s == fp.f(k, l);
    }
  out.coefficientwise = ok;
  return out;
}

}  // namespace ncd
