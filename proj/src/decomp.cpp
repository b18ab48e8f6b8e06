#include "ncd/decomp.hpp"

#include <algorithm>
#include <unordered_map>

#include "ncd/errors.hpp"
#include "ncd/parallel.hpp"

namespace ncd {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::bruteforce: return "bruteforce";
    case Provenance::closed_form: return "closed-form";
    case Provenance::product_rule: return "product-rule";
    case Provenance::linear_system: return "linear-system";
  }
  return "unknown";
}

DecompositionTable::DecompositionTable(TypeLabel ambient, std::set<TypeLabel> allowed)
    : ambient_(std::move(ambient)), allowed_(std::move(allowed)) {
  allowed_.erase(TypeLabel());
}

namespace {

TypeTuple strip_empty(const TypeTuple& t) {
  TypeTuple out;
  for (const auto& x : t)
    if (!x.empty()) out.push_back(x);
  return canonical(out);
}

}  // namespace

void DecompositionTable::set(const TypeTuple& t, const Integer& v, Provenance p) {
  TypeTuple key = strip_empty(t);
  if (key.empty()) throw InputError("empty tuple has no table entry");
  if (tuple_rank(key) > rank()) throw InputError("tuple " + tuple_str(key) + " exceeds ambient rank");
  if (v < 0) throw ConsistencyError("negative decomposition number for " + tuple_str(key));
  entries_[key] = {v, p};
}

std::optional<TableEntry> DecompositionTable::find(const TypeTuple& t) const {
  auto it = entries_.find(strip_empty(t));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool DecompositionTable::has_value(const TypeTuple& t) const {
  TypeTuple key = strip_empty(t);
  if (key.empty() || tuple_rank(key) > rank()) return true;
  for (const auto& x : key)
    if (!is_allowed(x)) return true;
  return entries_.count(key) > 0;
}

Integer DecompositionTable::value(const TypeTuple& t) const {
  TypeTuple key = strip_empty(t);
  if (key.empty()) return 1;
  if (tuple_rank(key) > rank()) return 0;
  for (const auto& x : key)
    if (!is_allowed(x)) return 0;
  auto it = entries_.find(key);
  if (it == entries_.end())
    throw DependencyError("decomposition number N_" + ambient_.str() + "(" + tuple_str(key) + ") unavailable");
  return it->second.value;
}

DecompositionTable DecompositionTable::full_rank_only() const {
  DecompositionTable out(ambient_, allowed_);
  for (const auto& [k, e] : entries_)
    if (tuple_rank(k) == rank()) out.entries_.emplace(k, e);
  return out;
}

Integer count_bruteforce(const NcPoset& nc, const TypeTuple& tuple) {
  if (tuple_rank(tuple) > nc.rank()) throw InputError("tuple " + tuple_str(tuple) + " exceeds ambient rank");
  std::vector<int> ids;
  for (const auto& t : tuple) {
    if (t.empty()) throw InputError("tuple entries must be nonempty types");
    int id = nc.find_type(t);
    if (id < 0) return 0;
    ids.push_back(id);
  }
  const std::size_t d = ids.size();
  std::unordered_map<std::uint64_t, std::uint64_t> memo;
  auto rec = [&](auto&& self, int y, std::size_t i) -> std::uint64_t {
    if (i == d) return 1;
    std::uint64_t key = (static_cast<std::uint64_t>(y) << 8) | i;
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    std::uint64_t total = 0;
    for (const auto& f : nc.factors(y, ids[i])) total += self(self, f.rest, i + 1);
    memo.emplace(key, total);
    return total;
  };
  std::uint64_t v = rec(rec, nc.top(), 0);
  return Integer(std::to_string(v));
}

DecompositionTable full_table(const NcPoset& nc, int threads, bool full_rank_only) {
  const int n = nc.rank();
  std::vector<TypeLabel> types;
  std::vector<int> ids;
  for (std::size_t i = 0; i < nc.type_names().size(); ++i) {
    if (nc.type_names()[i].empty()) continue;
    types.push_back(nc.type_names()[i]);
    ids.push_back(static_cast<int>(i));
  }
  const std::size_t count = nc.size();
  std::vector<std::vector<std::pair<TypeTuple, std::uint64_t>>> found(types.size());

  // Forward pass: g[x] counts factorizations of the prefix leaving x as the
  // remaining part of c.  Only one level of g is nonzero at a time.
  parallel_for(types.size(), threads, [&](std::size_t first) {
    std::vector<std::vector<std::uint64_t>> g(n + 2, std::vector<std::uint64_t>(count, 0));
    TypeTuple prefix;
    auto extend = [&](auto&& self, int depth, int remaining, std::size_t a) -> void {
      const auto& cur = g[depth];
      auto& next = g[depth + 1];
      std::size_t b_end = depth == 0 ? first + 1 : types.size();
      for (std::size_t b = depth == 0 ? first : a; b < b_end; ++b) {
        int r = types[b].rank();
        if (r > remaining) continue;
        for (int x : nc.levels()[remaining - r]) next[x] = 0;
        std::uint64_t total = 0;
        for (int x : nc.levels()[remaining]) {
          if (cur[x] == 0) continue;
          for (const auto& f : nc.factors(x, ids[b])) {
            next[f.rest] += cur[x];
            total += cur[x];
          }
        }
        prefix.push_back(types[b]);
        if (!full_rank_only || remaining == r) found[first].emplace_back(prefix, total);
        if (remaining > r) self(self, depth + 1, remaining - r, b);
        prefix.pop_back();
      }
    };
    g[0][nc.top()] = 1;
    extend(extend, 0, n, first);
  });

  DecompositionTable table(nc.ambient().label(), std::set<TypeLabel>(types.begin(), types.end()));
  for (const auto& list : found)
    for (const auto& [tuple, v] : list) table.set(tuple, Integer(std::to_string(v)), Provenance::bruteforce);
  return table;
}

Integer count_typeA(int n, const TypeTuple& tuple) {
  if (n < 1) throw InputError("type A rank must be positive");
  int total = 0;
  Rational product = 1;
  for (const auto& t : tuple) {
    std::vector<int> mult(n + 1, 0);
    for (const auto& c : t.components()) {
      if (c.family != 'A') throw InputError("type " + t.str() + " is not a product of type A components");
      if (c.rank > n) throw InputError("tuple ranks exceed n");
      ++mult[c.rank];
    }
    total += t.rank();
    if (total > n) throw InputError("tuple ranks exceed n");
    int big = n - t.rank() + 1;
    int parts = 0;
    for (int j = 1; j <= n; ++j) parts += mult[j];
    if (parts > big) return 0;
    Integer multinomial = factorial(big) / factorial(big - parts);
    for (int j = 1; j <= n; ++j) multinomial /= factorial(mult[j]);
    Rational step(multinomial, big);
    step.canonicalize();
    product *= step;
  }
  product.canonicalize();
  Integer power = 1;
  for (std::size_t i = 1; i < tuple.size(); ++i) power *= n + 1;
  Rational value = product * Rational(power * binomial(n + 1, total + 1));
  value.canonicalize();
  if (value.get_den() != 1) throw ConsistencyError("type A closed form is not integral for " + tuple_str(tuple));
  return value.get_num();
}

Integer count_product(const std::vector<const DecompositionTable*>& factors, const TypeTuple& tuple) {
  int ambient = 0;
  for (const auto* f : factors) ambient += f->rank();
  if (tuple_rank(tuple) != ambient) throw InputError("product rule needs a full rank tuple");
  if (factors.empty()) return tuple.empty() ? 1 : 0;
  auto rec = [&](auto&& self, std::size_t fi, const TypeTuple& tup) -> Integer {
    if (fi + 1 == factors.size()) return factors[fi]->value(tup);
    const int target = factors[fi]->rank();
    std::vector<std::vector<std::pair<TypeLabel, TypeLabel>>> splits;
    for (const auto& t : tup) splits.push_back(t.splittings());
    Integer total = 0;
    TypeTuple left(tup.size()), right(tup.size());
    auto choose = [&](auto&& cself, std::size_t i, int used) -> void {
      if (used > target) return;
      if (i == tup.size()) {
        if (used != target) return;
        Integer v = factors[fi]->value(left);
        if (v != 0) total += v * self(self, fi + 1, right);
        return;
      }
      for (const auto& [l, r] : splits[i]) {
        left[i] = l;
        right[i] = r;
        cself(cself, i + 1, used + l.rank());
      }
    };
    choose(choose, 0, 0);
    return total;
  };
  return rec(rec, 0, tuple);
}

std::vector<TypeTuple> tuples_of_rank(const std::set<TypeLabel>& allowed, int rank) {
  std::vector<TypeLabel> types(allowed.begin(), allowed.end());
  std::vector<TypeTuple> out;
  TypeTuple cur;
  auto rec = [&](auto&& self, std::size_t from, int remaining) -> void {
    if (remaining == 0) {
      if (!cur.empty()) out.push_back(cur);
      return;
    }
    for (std::size_t i = from; i < types.size(); ++i) {
      if (types[i].empty() || types[i].rank() > remaining) continue;
      cur.push_back(types[i]);
      self(self, i, remaining - types[i].rank());
      cur.pop_back();
    }
  };
  rec(rec, 0, rank);
  return out;
}

DecompositionTable product_table(const std::vector<const DecompositionTable*>& factors) {
  TypeLabel ambient;
  std::set<TypeLabel> allowed{TypeLabel()};
  for (const auto* f : factors) {
    ambient = ambient * f->ambient();
    std::set<TypeLabel> next;
    std::set<TypeLabel> own = f->allowed_types();
    own.insert(TypeLabel());
    for (const auto& a : allowed)
      for (const auto& b : own) next.insert(a * b);
    allowed = std::move(next);
  }
  allowed.erase(TypeLabel());
  DecompositionTable table(ambient, allowed);
  const int n = ambient.rank();
  for (const auto& t : tuples_of_rank(allowed, n)) table.set(t, count_product(factors, t), Provenance::product_rule);
  for (int r = n - 1; r >= 1; --r) {
    auto missing = tuples_of_rank(allowed, n - r);
    for (const auto& t : tuples_of_rank(allowed, r)) {
      Integer s = 0;
      for (const auto& m : missing) {
        if (m.size() != 1) continue;
        TypeTuple ext = t;
        ext.push_back(m[0]);
        s += table.value(ext);
      }
      table.set(t, s, Provenance::product_rule);
    }
  }
  return table;
}

DecompositionTable special_values(const RootSystem& rs) {
  if (!rs.label().is_irreducible()) throw InputError("special values need an irreducible ambient");
  const int n = rs.rank();
  const int h = rs.coxeter_number();
  auto sub = subdiagram_types(rs);
  DecompositionTable table(rs.label(), sub);
  const TypeLabel a1 = TypeLabel::parse("A1");
  table.set({rs.label()}, 1, Provenance::closed_form);
  table.set({a1}, static_cast<long>(rs.positive_roots().size()), Provenance::closed_form);
  Integer chains = factorial(n);
  for (int i = 0; i < n; ++i) chains *= h;
  if (chains % rs.group_order() != 0) throw ConsistencyError("maximal chain count is not integral");
  table.set(TypeTuple(n, a1), chains / rs.group_order(), Provenance::closed_form);
  for (const auto& t : all_types_of_rank(n - 1)) {
    if (t.empty()) continue;
    int count = single_node_deletion_count(rs, t);
    if (h * count % 2 != 0) throw ConsistencyError("odd corank-one count");
    table.set({t, a1}, static_cast<long>(h * count / 2), Provenance::closed_form);
  }
  return table;
}

}  // namespace ncd
