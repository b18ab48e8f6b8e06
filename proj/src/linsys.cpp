#include "ncd/linsys.hpp"

#include <algorithm>
#include <json.hpp>
#include <sstream>

#include "ncd/errors.hpp"
#include "ncd/golden.hpp"
#include "ncd/ncposet.hpp"

namespace ncd {

TableCatalog::TableCatalog(int threads, std::optional<std::filesystem::path> cache_dir)
    : threads_(threads), cache_dir_(std::move(cache_dir)) {}

void TableCatalog::add(DecompositionTable table) {
  TypeLabel key = table.ambient();
  tables_.insert_or_assign(key, std::move(table));
}

const DecompositionTable& TableCatalog::get(const TypeLabel& t) {
  auto it = tables_.find(t);
  if (it != tables_.end()) return it->second;
  if (t.empty()) throw InputError("no table for the empty type");
  if (t.is_irreducible()) {
    RootSystem rs = RootSystem::from_label(t);
    NcPoset nc = load_or_enumerate(rs, cache_dir_, threads_);
    return tables_.emplace(t, full_table(nc, threads_)).first->second;
  }
  std::vector<const DecompositionTable*> factors;
  for (const auto& c : t.components()) factors.push_back(&get(TypeLabel::from_components({c})));
  return tables_.emplace(t, product_table(factors)).first->second;
}

std::vector<TypeTuple> listed_zero_tuples(const TypeLabel& ambient) {
  const std::string s = ambient.str();
  std::vector<std::string> names;
  if (s == "E6") names = {"A1^4,A2", "A1^4,A1^2"};
  if (s == "D7") names = {"A1^5,A2", "A1^5,A1^2"};
  if (s == "E7") names = {"A1^5,A2", "A1^5,A1^2", "A1^5,A1,A1"};
  if (s == "E8")
    names = {"A1^6,A2",       "A1^6,A1^2",      "A1^6,A1,A1",      "A1^5,A3",        "A1^5,A1*A2",
             "A1^5,A1^3",     "A1^5,A2,A1",     "A1^5,A1^2,A1",    "A1^5,A1,A1,A1",  "A1^3*A3,A2",
             "A1^3*A3,A1^2",  "A1^3*A3,A1,A1",  "A2^3,A2",         "A2^3,A1^2",      "A1^4*A2,A2",
             "A1^4*A2,A1^2",  "A1^2*D4,A2",     "A1^2*D4,A1^2"};
  std::vector<TypeTuple> out;
  for (const auto& n : names) out.push_back(canonical(parse_tuple(n)));
  return out;
}

int GeneratedSystem::variable(const TypeTuple& t) const {
  auto it = index.find(canonical(t));
  return it == index.end() ? -1 : it->second;
}

namespace {

using Form = std::map<int, Rational>;

TypeTuple with(TypeTuple t, const TypeLabel& extra) {
  t.push_back(extra);
  return canonical(std::move(t));
}

// Unknown coefficients of N(t): the variable itself at full rank, otherwise
// the sum over the missing type.
Form linear_form(const GeneratedSystem& g, const std::map<int, std::vector<TypeLabel>>& by_rank, const TypeTuple& t) {
  const int n = g.ambient.rank();
  const int r = tuple_rank(t);
  Form f;
  if (r == n) {
    int v = g.variable(t);
    if (v >= 0) f[v] += 1;
    return f;
  }
  auto it = by_rank.find(n - r);
  if (it == by_rank.end()) return f;
  for (const auto& T : it->second) {
    int v = g.variable(with(t, T));
    if (v >= 0) f[v] += 1;
  }
  return f;
}

LinearRow to_row(const Form& f, const Rational& rhs, std::string provenance) {
  LinearRow row;
  for (const auto& [v, c] : f)
    if (c != 0) row.coefficients.emplace_back(v, c);
  row.rhs = rhs;
  row.provenance = std::move(provenance);
  return row;
}

bool is_trivial(const LinearRow& r) { return r.coefficients.empty() && r.rhs == 0; }

Poly shifted_zeta(const TypeLabel& t) {
  return zeta_closed(t, 1).substitute(Var::z, Poly::variable(Var::z) - Poly(1));
}

}  // namespace

GeneratedSystem generate_equations(const RootSystem& rs, TableCatalog& lower, const LinsysOptions& opt) {
  if (!rs.label().is_irreducible()) throw InputError("the linear system is set up for irreducible ambients");
  const int n = rs.rank();
  GeneratedSystem g;
  g.ambient = rs.label();
  std::set<TypeLabel> sub = subdiagram_types(rs);
  sub.erase(TypeLabel());
  g.universe = sub;
  for (const auto& t : all_types_of_rank(n - 1))
    if (!t.empty()) g.universe.insert(t);
  for (const auto& z : listed_zero_tuples(g.ambient))
    for (const auto& t : z) g.universe.insert(t);

  g.unknowns = tuples_of_rank(g.universe, n);
  std::sort(g.unknowns.begin(), g.unknowns.end(), TypeTupleLess());
  for (std::size_t i = 0; i < g.unknowns.size(); ++i) {
    g.index.emplace(g.unknowns[i], static_cast<int>(i));
    g.system.variables.push_back(tuple_str(g.unknowns[i]));
  }
  std::map<int, std::vector<TypeLabel>> by_rank;
  for (const auto& t : g.universe) by_rank[t.rank()].push_back(t);

  auto add = [&](const std::string& family, LinearRow row) {
    if (is_trivial(row)) {
      ++g.family_rows[family + "-trivial"];
      return;
    }
    ++g.family_rows[family];
    g.system.rows.push_back(std::move(row));
  };

  // Chain relations: N(A, B) = sum_T N_T(B) N(A, T) with rk T = rk B.
  for (int ra = 1; ra < n; ++ra) {
    const int rb = n - ra;
    auto bs = tuples_of_rank(sub, rb);
    for (const auto& a : tuples_of_rank(g.universe, ra)) {
      for (const auto& b : bs) {
        Form f;
        TypeTuple ab = a;
        ab.insert(ab.end(), b.begin(), b.end());
        f[g.variable(canonical(ab))] += 1;
        for (const auto& T : by_rank[rb]) {
          Integer c = lower.get(T).value(b);
          if (c != 0) f[g.variable(with(a, T))] -= Rational(c);
        }
        add("chain", to_row(f, 0, "chain (" + tuple_str(a) + " | " + tuple_str(b) + ")"));
      }
    }
  }

  // Multichain identity: Z_{NC^m}(z) = sum_t N(t) prod Z_{t_i}(z - 1) binom(m, d).
  {
    std::map<TypeLabel, Poly> zeta;
    for (const auto& t : g.universe) zeta.emplace(t, shifted_zeta(t));
    std::vector<Poly> binom;
    for (int d = 0; d <= n; ++d) binom.push_back(binomial_poly(d));
    std::vector<Poly> coef(g.unknowns.size());
    for (int r = 1; r <= n; ++r) {
      for (const auto& t : tuples_of_rank(g.universe, r)) {
        Poly w = binom[t.size()] * Rational(static_cast<long>(orderings(t)));
        for (const auto& x : t) w *= zeta.at(x);
        for (const auto& [v, c] : linear_form(g, by_rank, t)) coef[v] += w * c;
      }
    }
    Poly lhs = zeta_closed(g.ambient, std::nullopt) - Poly(1);
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        Exponents e{0, 0, j, i};
        Form f;
        for (std::size_t v = 0; v < coef.size(); ++v) {
          Rational c = coef[v].coefficient(e);
          if (c != 0) f[static_cast<int>(v)] = c;
        }
        add("multichain", to_row(f, lhs.coefficient(e),
                                 "multichain m^" + std::to_string(i) + " z^" + std::to_string(j)));
      }
  }

  // Special values and corank-one counts.
  const DecompositionTable special = special_values(rs);
  for (const auto& [t, e] : special.entries())
    add("special", to_row(linear_form(g, by_rank, t), Rational(e.value), "special (" + tuple_str(t) + ")"));

  // Zero assignments for the listed tuples with non-sub-diagram types.
  std::set<TypeTuple, TypeTupleLess> zeros;
  for (const auto& z : listed_zero_tuples(g.ambient)) zeros.insert(z);
  if (opt.zero_all_forbidden)
    for (const auto& u : g.unknowns)
      for (const auto& x : u)
        if (!sub.count(x)) zeros.insert(u);
  for (const auto& z : zeros) add("zero", to_row({{g.variable(z), Rational(1)}}, 0, "zero (" + tuple_str(z) + ")"));
  return g;
}

std::vector<Rational> oracle_vector(const GeneratedSystem& g, const DecompositionTable& brute) {
  std::vector<Rational> x;
  x.reserve(g.unknowns.size());
  for (const auto& u : g.unknowns) x.emplace_back(brute.value(u));
  return x;
}

std::optional<int> expected_dimension(const TypeLabel& ambient) {
  const std::string s = ambient.str();
  if (s == "E6") return 1;
  if (s == "D6" || s == "D7" || s == "E7") return 2;
  if (s == "E8") return 4;
  if (ambient.is_irreducible()) {
    const auto& c = ambient.components()[0];
    if ((c.family == 'A' && c.rank <= 7) || (c.family == 'D' && c.rank <= 5)) return 0;
  }
  return std::nullopt;
}

namespace {

// An affine relation N(lhs) = c0 + sum c_k N(t_k) between table entries.
struct Relation {
  std::string name;
  TypeTuple lhs;
  Rational c0;
  std::vector<std::pair<Rational, TypeTuple>> terms;
};

Relation rel(std::string name, const std::string& lhs, const std::string& c0,
             std::vector<std::pair<std::string, std::string>> terms) {
  Relation r{std::move(name), parse_tuple(lhs), Rational(c0), {}};
  r.c0.canonicalize();
  for (auto& [c, t] : terms) {
    Rational q(c);
    q.canonicalize();
    r.terms.emplace_back(q, parse_tuple(t));
  }
  return r;
}

std::vector<std::string> pin_candidates(const TypeLabel& ambient) {
  const std::string s = ambient.str();
  if (s == "E6") return {"A1^3,A1^3"};
  if (s == "D6") return {"A1^3,A1^3", "A1^4,A1^2"};
  if (s == "D7" || s == "E7") return {"A1^4,A1^3", "A1^2*A2,A1^3"};
  if (s == "E8") return {"A5,A1*A2", "D5,A1*A2", "A4,A1*A3", "D4,A4"};
  return {};
}

std::vector<Relation> relations(const TypeLabel& ambient) {
  const std::string s = ambient.str();
  if (s == "E7") {
    const std::string X = "A1^4,A1^3", Y = "A1^2*A2,A1^3";
    return {rel("E7 N(A5,A2)", "A5,A2", "1272/25", {{"-58/75", X}, {"-58/225", Y}}),
            rel("E7 N(A4,A3)", "A4,A3", "594/25", {{"18/25", X}, {"11/25", Y}}),
            rel("E7 N(D4,A3)", "D4,A3", "126/5", {{"-2/5", X}, {"-7/30", Y}}),
            rel("E7 N(A1^3*A2,A1^2)", "A1^3*A2,A1^2", "423/5", {{"-14/5", X}, {"-14/15", Y}}),
            rel("E7 N(A1^3*A2,A2)", "A1^3*A2,A2", "-192/5", {{"28/15", X}, {"28/45", Y}})};
  }
  if (s == "E8") {
    const std::string X = "A5,A1*A2", Y = "D5,A1*A2", Z = "A4,A1*A3", U = "D4,A4";
    return {rel("E8 N(A5,A3)", "A5,A3", "750/4", {{"-1/4", X}}),
            rel("E8 N(D5,A3)", "D5,A3", "375/4", {{"-1/4", Y}}),
            rel("E8 N(A5,A1^3)", "A5,A1^3", "625", {{"-5/6", X}}),
            rel("E8 N(D5,A1^3)", "D5,A1^3", "625/2", {{"-5/6", Y}}),
            rel("E8 N(A2*A3,A1*A2)", "A2*A3,A1*A2", "495", {{"-24/25", X}, {"48/25", Y}}),
            rel("E8 N(A2*A3,A1^3)", "A2*A3,A1^3", "225", {{"4/5", X}, {"-8/5", Y}}),
            rel("E8 N(A1*D4,A3)", "A1*D4,A3", "-150", {{"1", Y}}),
            rel("E8 N(A1^2*A3,A1^3)", "A1^2*A3,A1^3", "9975", {{"-56/5", X}, {"-138/5", Y}}),
            rel("E8 N(A1*A4,A1*A2)", "A1*A4,A1*A2", "4590", {{"-6", X}, {"-8", Y}}),
            rel("E8 N(A1^3*A2,A1^3)", "A1^3*A2,A1^3", "-5775", {{"112/15", X}, {"226/15", Y}}),
            rel("E8 N(D4)", "D4", "27263/168",
                {{"-1/40", Z}, {"1/40", U}, {"283/1500", X}, {"7957/15750", Y}})};
  }
  if (s == "D6") {
    const std::string X = "A1^3,A1^3", Y = "A1^4,A1^2";
    return {rel("D6 N(A1^2*A2,A1^2)", "A1^2*A2,A1^2", "25", {{"-27/40", X}, {"-3", Y}}),
            rel("D6 N(A3,A3)", "A3,A3", "20", {{"9/100", X}})};
  }
  if (s == "D7") {
    const std::string X = "A1^4,A1^3", Y = "A1^2*A2,A1^3";
    return {rel("D7 N(A1^4,A1*A2)", "A1^4,A1*A2", "216/5", {{"-6/5", X}}),
            rel("D7 N(A1^2*A2,A3)", "A1^2*A2,A3", "243/5", {{"3/10", Y}}),
            rel("D7 N(A1*A3,A1^3)", "A1*A3,A1^3", "84", {{"-1/3", Y}}),
            rel("D7 N(A1*A2^2,A2)", "A1*A2^2,A2", "168/5", {{"-14/5", X}, {"-14/15", Y}}),
            rel("D7 N(A1*A2^2,A1^2)", "A1*A2^2,A1^2", "-252/5", {{"21/5", X}, {"7/5", Y}})};
  }
  if (s == "E6") return {rel("E6 N(A3,A3)", "A3,A3", "648/25", {{"9/100", "A1^3,A1^3"}})};
  return {};
}

Rational eval_form(const Form& f, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [v, c] : f) s += c * x[v];
  return s;
}

bool divisible(const Integer& a, long m) { return mpz_divisible_ui_p(a.get_mpz_t(), m) != 0; }
bool congruent(const Integer& a, long r, long m) {
  Integer d = a - r;
  return divisible(d, m);
}

std::string show(const Rational& r) {
  Rational q = r;
  q.canonicalize();
  return q.get_str();
}

void check_congruences(const TypeLabel& ambient, const DecompositionTable& t, std::vector<Assertion>& out) {
  const std::string s = ambient.str();
  auto val = [&](const std::string& tuple) { return t.value(parse_tuple(tuple)); };
  auto put = [&](std::string d, bool ok, std::string detail = {}) {
    out.push_back({std::move(d), ok, std::move(detail)});
  };
  if (s == "E7") {
    Integer X = val("A1^4,A1^3"), Y = val("A1^2*A2,A1^3");
    std::string xy = "X=" + X.get_str() + " Y=" + Y.get_str();
    put("E7 X - 8Y = 2 mod 25", congruent(X - 8 * Y, 2, 25), xy);
    put("E7 18X + 11Y = 6 mod 25", congruent(18 * X + 11 * Y, 6, 25), xy);
    put("E7 Y = 0 mod 6", divisible(Y, 6), xy);
    put("E7 3 divides X", divisible(X, 3), xy);
    bool param = divisible(Y + 6, 30);
    Integer y = param ? Integer((Y + 6) / 30) : Integer(0);
    param = param && divisible(X - 15 * y - 4, 25) && y > 0;
    Integer x = param ? Integer((X - 15 * y - 4) / 25) : Integer(0);
    put("E7 X = 25x + 15y + 4, Y = 30y - 6 with y > 0", param,
        "x=" + x.get_str() + " y=" + y.get_str());
    put("E7 x + y = 1", param && x + y == 1);
    put("E7 N(A1^3*A2,A1^2) = 79 - 70(x + y)", param && val("A1^3*A2,A1^2") == 79 - 70 * (x + y));
    put("E7 3 N(A1^3*A2,A2) = 4(35(x + y) - 26)", param && 3 * val("A1^3*A2,A2") == 4 * (35 * (x + y) - 26));
  } else if (s == "E8") {
    Integer X = val("A5,A1*A2"), Y = val("D5,A1*A2");
    std::string xy = "X=" + X.get_str() + " Y=" + Y.get_str();
    put("E8 X = 6 mod 12", congruent(X, 6, 12), xy);
    put("E8 Y = 3 mod 12", congruent(Y, 3, 12), xy);
    put("E8 X = 2Y mod 25", congruent(X - 2 * Y, 0, 25), xy);
    bool param = congruent(Y, 3, 12);
    Integer y = param ? Integer((Y - 3) / 12) : Integer(0);
    param = param && divisible(X - 24 * y - 6, 300) && y >= 0;
    Integer x = param ? Integer((X - 24 * y - 6) / 300) : Integer(0);
    put("E8 X = 300x + 24y + 6, Y = 12y + 3 with y >= 0", param, "x=" + x.get_str() + " y=" + y.get_str());
    put("E8 N(A5,A3) = 3(62 - 25x - 2y)", param && val("A5,A3") == 3 * (62 - 25 * x - 2 * y));
    put("E8 N(A2*A3,A1^3) = 225 + 240x", param && val("A2*A3,A1^3") == 225 + 240 * x);
    put("E8 N(A1*D4,A3) = 12y - 147", param && val("A1*D4,A3") == 12 * y - 147);
    put("E8 N(A1^2*A3,A1^3) = 15(655 - 224x - 40y)", param && val("A1^2*A3,A1^3") == 15 * (655 - 224 * x - 40 * y));
    put("E8 N(A1*A4,A1*A2) = 30(151 - 60x - 8y)", param && val("A1*A4,A1*A2") == 30 * (151 - 60 * x - 8 * y));
    put("E8 N(A1^3*A2,A1^3) = 5(448x + 72y - 1137)", param && val("A1^3*A2,A1^3") == 5 * (448 * x + 72 * y - 1137));
    put("E8 0 <= x <= 2 and 13 <= y <= 16", param && x >= 0 && x <= 2 && y >= 13 && y <= 16);
    put("E8 x = 0 and y = 16", param && x == 0 && y == 16);
    put("E8 N(D4) = 325", val("D4") == 325, val("D4").get_str());
  } else if (s == "D6") {
    Integer X = val("A1^3,A1^3"), Y = val("A1^4,A1^2");
    std::string xy = "X=" + X.get_str() + " Y=" + Y.get_str();
    put("D6 X = 0 mod 200", divisible(X, 200), xy);
    put("D6 Y = 2 mod 3", congruent(Y, 2, 3), xy);
    put("D6 5 divides Y", divisible(Y, 5), xy);
    put("D6 27X <= 1000 and 3Y <= 25", 27 * X <= 1000 && 3 * Y <= 25, xy);
  } else if (s == "D7") {
    Integer X = val("A1^4,A1^3"), Y = val("A1^2*A2,A1^3");
    std::string xy = "X=" + X.get_str() + " Y=" + Y.get_str();
    put("D7 X = 1 mod 5", congruent(X, 1, 5), xy);
    put("D7 Y = 18 mod 30", congruent(Y, 18, 30), xy);
    put("D7 3X + Y = 36", 3 * X + Y == 36, xy);
  } else if (s == "E6") {
    Integer X = val("A1^3,A1^3");
    put("E6 X = 12 mod 100", congruent(X, 12, 100), "X=" + X.get_str());
    put("E6 X <= 32", X <= 32, "X=" + X.get_str());
  }
}

}  // namespace

bool ReplayReport::passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const Assertion& a) { return a.pass; });
}

ReplayReport replay(const RootSystem& rs, TableCatalog& lower, const DecompositionTable& brute,
                    const LinsysOptions& opt) {
  ReplayReport rep;
  rep.ambient = rs.label();
  GeneratedSystem g = generate_equations(rs, lower, opt);
  const int n = rs.rank();
  rep.equation_count = static_cast<int>(g.system.rows.size());
  rep.variable_count = static_cast<int>(g.unknowns.size());
  rep.family_rows = g.family_rows;
  rep.expected_dimension = expected_dimension(rep.ambient);
  auto put = [&](std::string d, bool ok, std::string detail = {}) {
    rep.assertions.push_back({std::move(d), ok, std::move(detail)});
  };

  const std::vector<Rational> oracle = oracle_vector(g, brute);
  {
    int bad = 0;
    std::string first;
    for (const auto& row : g.system.rows)
      if (row_value(row, oracle) != row.rhs) {
        if (bad++ == 0) first = row.provenance;
      }
    put("brute-force table satisfies every equation", bad == 0,
        bad == 0 ? std::to_string(g.system.rows.size()) + " rows" : std::to_string(bad) + " violated, first " + first);
  }

  SolutionSpace sol;
  try {
    sol = solve(g.system);
  } catch (const InconsistentSystem& e) {
    put("system is consistent", false, e.what());
    return rep;
  }
  rep.distinct_equations = sol.distinct_rows;
  rep.rank = sol.rank;
  rep.dimension = sol.dimension;
  if (rep.expected_dimension) {
    bool ok = rep.dimension <= *rep.expected_dimension;
    rep.dimension_relaxed = rep.dimension < *rep.expected_dimension;
    std::string detail = "dimension " + std::to_string(rep.dimension) + ", expected " +
                         std::to_string(*rep.expected_dimension);
    if (rep.dimension_relaxed) detail += " (smaller: extra independent relations)";
    put("solution space dimension", ok, detail);
  }

  // Every relation between the named entries must hold on the whole
  // affine solution space, not only at the pinned point.
  std::map<int, std::vector<TypeLabel>> by_rank;
  for (const auto& t : g.universe) by_rank[t.rank()].push_back(t);
  for (const auto& r : relations(rep.ambient)) {
    Form f = linear_form(g, by_rank, r.lhs);
    for (const auto& [c, t] : r.terms)
      for (const auto& [v, k] : linear_form(g, by_rank, t)) f[v] -= c * k;
    bool ok = eval_form(f, sol.particular) == r.c0;
    for (const auto& nv : sol.nullspace) ok = ok && eval_form(f, nv) == 0;
    put("relation " + r.name + " holds on the solution space", ok);
  }

  // Pins: preferred entries first, then any entry that still adds rank.
  std::vector<int> pin_vars;
  if (sol.dimension > 0) {
    std::vector<int> order;
    for (const auto& p : pin_candidates(rep.ambient)) {
      int v = g.variable(parse_tuple(p));
      if (v >= 0) order.push_back(v);
    }
    for (int v = 0; v < static_cast<int>(g.unknowns.size()); ++v)
      if (std::find(order.begin(), order.end(), v) == order.end()) order.push_back(v);
    LinearSystem probe;
    for (int k = 0; k < sol.dimension; ++k) probe.variables.push_back("t" + std::to_string(k));
    int current = 0;
    for (int v : order) {
      if (current == sol.dimension) break;
      LinearRow row;
      for (int k = 0; k < sol.dimension; ++k)
        if (sol.nullspace[k][v] != 0) row.coefficients.emplace_back(k, sol.nullspace[k][v]);
      if (row.coefficients.empty()) continue;
      probe.rows.push_back(row);
      if (solve(probe).rank > current) {
        ++current;
        pin_vars.push_back(v);
      } else {
        probe.rows.pop_back();
      }
    }
    put("pin matrix has full rank", current == sol.dimension,
        std::to_string(current) + " of " + std::to_string(sol.dimension));
    if (current != sol.dimension) return rep;
  }

  std::vector<Rational> x = sol.particular;
  if (!pin_vars.empty()) {
    LinearSystem pins;
    for (int k = 0; k < sol.dimension; ++k) pins.variables.push_back("t" + std::to_string(k));
    for (int v : pin_vars) {
      LinearRow row;
      for (int k = 0; k < sol.dimension; ++k)
        if (sol.nullspace[k][v] != 0) row.coefficients.emplace_back(k, sol.nullspace[k][v]);
      row.rhs = oracle[v] - sol.particular[v];
      row.provenance = "pin " + g.system.variables[v];
      pins.rows.push_back(std::move(row));
      rep.pins.emplace_back(g.unknowns[v], oracle[v].get_num());
    }
    SolutionSpace t = solve(pins);
    for (int k = 0; k < sol.dimension; ++k)
      for (std::size_t v = 0; v < x.size(); ++v) x[v] += t.particular[k] * sol.nullspace[k][v];
  }

  {
    int bad = 0;
    std::string first;
    for (std::size_t v = 0; v < x.size(); ++v)
      if (x[v].get_den() != 1 || x[v] < 0) {
        if (bad++ == 0) first = g.system.variables[v] + " = " + show(x[v]);
      }
    put("pinned solution is a nonnegative integer vector", bad == 0, first);
    if (bad) return rep;
  }
  {
    int bad = 0;
    std::string first;
    for (std::size_t v = 0; v < x.size(); ++v)
      if (x[v] != oracle[v]) {
        if (bad++ == 0) first = g.system.variables[v] + ": " + show(x[v]) + " vs " + show(oracle[v]);
      }
    put("pinned solution equals the brute-force table", bad == 0,
        bad == 0 ? std::to_string(x.size()) + " entries" : first);
  }

  DecompositionTable table(rep.ambient, g.universe);
  for (std::size_t v = 0; v < x.size(); ++v) table.set(g.unknowns[v], x[v].get_num(), Provenance::linear_system);
  for (int r = n - 1; r >= 1; --r)
    for (const auto& t : tuples_of_rank(g.universe, r)) {
      Rational s = eval_form(linear_form(g, by_rank, t), x);
      table.set(t, s.get_num(), Provenance::linear_system);
    }
  rep.final_table = table;

  check_congruences(rep.ambient, rep.final_table, rep.assertions);

  auto golden = reference_decomposition_numbers(rep.ambient);
  if (!golden.empty()) {
    int bad = 0;
    std::string first;
    for (const auto& ref : golden) {
      Integer v = tuple_rank(ref.tuple) <= n ? table.value(ref.tuple) : Integer(0);
      if (v != ref.value) {
        if (bad++ == 0) first = tuple_str(ref.tuple) + ": " + v.get_str() + " vs " + ref.value.get_str();
      }
    }
    put("table matches the " + std::to_string(golden.size()) + " listed values", bad == 0, first);
  }
  return rep;
}

std::string report_json(const ReplayReport& r) {
  nlohmann::ordered_json j;
  j["ambient"] = r.ambient.str();
  j["equations"] = r.equation_count;
  j["distinct_equations"] = r.distinct_equations;
  j["variables"] = r.variable_count;
  j["rank"] = r.rank;
  j["dimension"] = r.dimension;
  if (r.expected_dimension) j["expected_dimension"] = *r.expected_dimension;
  j["dimension_relaxed"] = r.dimension_relaxed;
  j["family_rows"] = r.family_rows;
  auto& pins = j["pins"] = nlohmann::ordered_json::array();
  for (const auto& [t, v] : r.pins) pins.push_back({{"tuple", tuple_str(t)}, {"value", v.get_str()}});
  auto& as = j["assertions"] = nlohmann::ordered_json::array();
  for (const auto& a : r.assertions)
    as.push_back({{"description", a.description}, {"pass", a.pass}, {"detail", a.detail}});
  auto& tab = j["table"] = nlohmann::ordered_json::array();
  for (const auto& [t, e] : r.final_table.entries())
    if (tuple_rank(t) == r.final_table.rank()) tab.push_back({{"tuple", tuple_str(t)}, {"value", e.value.get_str()}});
  j["passed"] = r.passed();
  return j.dump(2);
}

}  // namespace ncd
