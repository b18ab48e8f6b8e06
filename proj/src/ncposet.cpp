#include "ncd/ncposet.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <sstream>
#include <unistd.h>

#include "ncd/errors.hpp"
#include "ncd/parallel.hpp"

namespace ncd {

namespace {

std::vector<GroupElement> reflections_of(const RootSystem& rs) {
  std::vector<GroupElement> out;
  for (const auto& a : rs.positive_roots()) out.push_back(reflection(rs, a));
  return out;
}

bool data_less(const GroupElement& a, const GroupElement& b) { return a.data() < b.data(); }

}  // namespace

NcPoset NcPoset::enumerate(const RootSystem& rs, int threads) {
  const int n = rs.rank();
  const GroupElement c = bipartite_coxeter(rs);
  const auto refl = reflections_of(rs);
  const auto& roots = rs.positive_roots();

  // Each element travels with its complement w^-1 c; the elements covering
  // w are w t for the reflections t below the complement, i.e. those whose
  // root lies in the moved space of the complement.
  std::vector<GroupElement> level{GroupElement::identity(n)};
  std::vector<GroupElement> level_comp{c};
  NcPoset p;
  p.rs_ = rs;
  for (int k = 0;; ++k) {
    for (std::size_t i = 0; i < level.size(); ++i) {
      p.elements_.push_back(level[i]);
      p.ranks_.push_back(k);
    }
    if (k == n) break;
    std::vector<std::vector<std::pair<GroupElement, GroupElement>>> found(level.size());
    parallel_for(level.size(), threads, [&](std::size_t i) {
      MovedSpace mov(level_comp[i]);
      for (std::size_t j = 0; j < roots.size(); ++j)
        if (mov.contains(roots[j])) found[i].emplace_back(level[i] * refl[j], refl[j] * level_comp[i]);
    });
    std::unordered_map<GroupElement, GroupElement, GroupElementHash> next;
    for (auto& f : found)
      for (auto& [w, x] : f) next.emplace(std::move(w), std::move(x));
    std::vector<std::pair<GroupElement, GroupElement>> sorted(next.begin(), next.end());
    std::sort(sorted.begin(), sorted.end(), [](const auto& a, const auto& b) { return data_less(a.first, b.first); });
    level.clear();
    level_comp.clear();
    for (auto& [w, x] : sorted) {
      level.push_back(w);
      level_comp.push_back(x);
    }
    if (level.empty()) throw ConsistencyError("enumeration stopped below the Coxeter element");
  }
  if (p.elements_.back() != c || p.ranks_.back() != n) throw ConsistencyError("top level is not the Coxeter element");

  std::vector<TypeLabel> types(p.elements_.size());
  parallel_for(p.elements_.size(), threads, [&](std::size_t i) {
    const auto& w = p.elements_[i];
    if (absolute_length(w) != p.ranks_[i] || absolute_length(inverse(rs, w) * c) != n - p.ranks_[i])
      throw ConsistencyError("enumerated element violates the length condition");
    types[i] = parabolic_type_unchecked(rs, w);
  });
  std::vector<TypeLabel> names = types;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  p.type_names_ = names;
  for (const auto& t : types)
    p.type_ids_.push_back(static_cast<int>(std::lower_bound(names.begin(), names.end(), t) - names.begin()));
  p.index_and_factor(threads);
  return p;
}

NcPoset NcPoset::from_elements(const RootSystem& rs, const std::vector<GroupElement>& elements,
                               const std::vector<int>& ranks, const std::vector<TypeLabel>& types, int threads) {
  if (elements.size() != ranks.size() || elements.size() != types.size() || elements.empty())
    throw ConsistencyError("stored poset fields have different lengths");
  const GroupElement c = bipartite_coxeter(rs);
  NcPoset p;
  p.rs_ = rs;
  p.elements_ = elements;
  p.ranks_ = ranks;
  for (std::size_t i = 1; i < ranks.size(); ++i)
    if (ranks[i] < ranks[i - 1]) throw ConsistencyError("stored elements are not grouped by rank");
  if (!elements.front().is_identity() || elements.back() != c)
    throw ConsistencyError("stored poset lacks identity or Coxeter element");
  parallel_for(elements.size(), threads, [&](std::size_t i) {
    const auto& w = elements[i];
    if (w.dim() != rs.rank() || !preserves_form(rs, w)) throw ConsistencyError("stored matrix is not a group element");
    if (absolute_length(w) != ranks[i] || absolute_length(inverse(rs, w) * c) != rs.rank() - ranks[i])
      throw ConsistencyError("stored element violates the length condition");
    if (parabolic_type_unchecked(rs, w) != types[i]) throw ConsistencyError("stored type disagrees with classification");
  });
  std::vector<TypeLabel> names = types;
  std::sort(names.begin(), names.end());
  names.erase(std::unique(names.begin(), names.end()), names.end());
  p.type_names_ = names;
  for (const auto& t : types)
    p.type_ids_.push_back(static_cast<int>(std::lower_bound(names.begin(), names.end(), t) - names.begin()));
  p.index_and_factor(threads);
  return p;
}

void NcPoset::index_and_factor(int threads) {
  const int count = size();
  levels_.assign(rs_.rank() + 1, {});
  for (int i = 0; i < count; ++i) {
    if (!index_.emplace(elements_[i], i).second) throw ConsistencyError("duplicate poset element");
    levels_[ranks_[i]].push_back(i);
  }
  top_ = count - 1;
  const GroupElement& c = elements_[top_];
  const auto refl = reflections_of(rs_);
  const auto& roots = rs_.positive_roots();

  std::vector<GroupElement> inv(count);
  complement_.assign(count, -1);
  std::vector<std::vector<int>> down(count);
  parallel_for(count, threads, [&](std::size_t i) {
    inv[i] = inverse(rs_, elements_[i]);
    complement_[i] = index_of(inv[i] * c);
    if (complement_[i] < 0) throw ConsistencyError("complement missing from poset");
    MovedSpace mov(elements_[i]);
    for (std::size_t j = 0; j < roots.size(); ++j) {
      if (!mov.contains(roots[j])) continue;
      int v = index_of(elements_[i] * refl[j]);
      if (v < 0 || ranks_[v] != ranks_[i] - 1) throw ConsistencyError("lower cover missing from poset");
      down[i].push_back(v);
    }
  });

  std::vector<std::vector<Factor>> per(count);
  parallel_for(count, threads, [&](std::size_t y) {
    std::vector<char> seen(count, 0);
    std::deque<int> queue{static_cast<int>(y)};
    seen[y] = 1;
    while (!queue.empty()) {
      int v = queue.front();
      queue.pop_front();
      int r = index_of(inv[v] * elements_[y]);
      if (r < 0 || ranks_[r] != ranks_[y] - ranks_[v]) throw ConsistencyError("interval complement missing");
      per[y].push_back({v, r});
      for (int u : down[v])
        if (!seen[u]) {
          seen[u] = 1;
          queue.push_back(u);
        }
    }
    std::sort(per[y].begin(), per[y].end(), [&](const Factor& a, const Factor& b) {
      if (type_ids_[a.lower] != type_ids_[b.lower]) return type_ids_[a.lower] < type_ids_[b.lower];
      return a.lower < b.lower;
    });
  });
  factor_offsets_.assign(count + 1, 0);
  for (int y = 0; y < count; ++y) factor_offsets_[y + 1] = factor_offsets_[y] + per[y].size();
  factor_data_.reserve(factor_offsets_.back());
  for (auto& v : per) {
    factor_data_.insert(factor_data_.end(), v.begin(), v.end());
    std::vector<Factor>().swap(v);
  }
}

int NcPoset::find_type(const TypeLabel& t) const {
  auto it = std::lower_bound(type_names_.begin(), type_names_.end(), t);
  if (it == type_names_.end() || *it != t) return -1;
  return static_cast<int>(it - type_names_.begin());
}

int NcPoset::index_of(const GroupElement& g) const {
  auto it = index_.find(g);
  return it == index_.end() ? -1 : it->second;
}

std::vector<int> NcPoset::level_sizes() const {
  std::vector<int> out;
  for (const auto& l : levels_) out.push_back(static_cast<int>(l.size()));
  return out;
}

std::span<const Factor> NcPoset::factors(int y) const {
  return {factor_data_.data() + factor_offsets_[y], factor_offsets_[y + 1] - factor_offsets_[y]};
}

std::span<const Factor> NcPoset::factors(int y, int type_id) const {
  auto all = factors(y);
  auto lo = std::lower_bound(all.begin(), all.end(), type_id,
                             [&](const Factor& f, int t) { return type_ids_[f.lower] < t; });
  auto hi = std::upper_bound(lo, all.end(), type_id,
                             [&](int t, const Factor& f) { return t < type_ids_[f.lower]; });
  return {lo, hi};
}

bool NcPoset::le(int u, int w) const { return le_absolute(elements_[u], elements_[w], rs_); }

std::map<TypeLabel, int> NcPoset::type_census() const {
  std::map<TypeLabel, int> out;
  for (int i = 0; i < size(); ++i) ++out[type_of(i)];
  return out;
}

std::vector<GroupElement> whole_group(const RootSystem& rs, std::size_t limit) {
  std::vector<GroupElement> gens;
  for (int i = 0; i < rs.rank(); ++i) gens.push_back(simple_reflection(rs, i));
  std::unordered_map<GroupElement, int, GroupElementHash> seen;
  std::vector<GroupElement> out{GroupElement::identity(rs.rank())};
  seen.emplace(out[0], 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& s : gens) {
      auto g = out[i] * s;
      if (seen.emplace(g, 0).second) {
        out.push_back(g);
        if (out.size() > limit) throw ResourceGuardError("group too large for explicit enumeration");
      }
    }
  }
  return out;
}

std::vector<GroupElement> nc_by_group_filter(const RootSystem& rs) {
  const GroupElement c = bipartite_coxeter(rs);
  std::vector<GroupElement> out;
  for (const auto& w : whole_group(rs, 1000000))
    if (absolute_length(w) + absolute_length(inverse(rs, w) * c) == rs.rank()) out.push_back(w);
  return out;
}

std::filesystem::path cache_path(const std::filesystem::path& dir, const TypeLabel& label) {
  return dir / ("nc-" + label.str() + ".txt");
}

namespace {

void write_matrix(std::ostream& out, const GroupElement& g) {
  for (int i = 0; i < g.dim(); ++i)
    for (int j = 0; j < g.dim(); ++j) out << (i || j ? " " : "") << g.at(i, j);
}

bool read_matrix(std::istream& in, int n, GroupElement& g) {
  g = GroupElement::identity(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int v;
      if (!(in >> v) || v < -128 || v > 127) return false;
      g.set(i, j, v);
    }
  return true;
}

}  // namespace

void write_cache(const NcPoset& nc, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  const auto path = cache_path(dir, nc.ambient().label());
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp);
    if (!out) throw InputError("cannot write cache file " + tmp.string());
    out << "ncd-nc-cache\n";
    out << "schema_version " << kCacheSchemaVersion << "\n";
    out << "label " << nc.ambient().label().str() << "\n";
    out << "rank " << nc.rank() << "\n";
    out << "coxeter ";
    write_matrix(out, nc.coxeter());
    out << "\nelements " << nc.size() << "\n";
    for (int i = 0; i < nc.size(); ++i) {
      write_matrix(out, nc.element(i));
      out << " " << nc.rank_of(i) << " " << nc.type_of(i).str() << "\n";
    }
    out << "end\n";
    if (!out) throw InputError("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::optional<NcPoset> read_cache(const RootSystem& rs, const std::filesystem::path& dir, int threads) {
  std::ifstream in(cache_path(dir, rs.label()));
  if (!in) return std::nullopt;
  std::string word, magic;
  int version = 0, n = 0;
  std::string label;
  if (!(in >> magic) || magic != "ncd-nc-cache") return std::nullopt;
  if (!(in >> word >> version) || word != "schema_version" || version != kCacheSchemaVersion) return std::nullopt;
  if (!(in >> word >> label) || word != "label" || label != rs.label().str()) return std::nullopt;
  if (!(in >> word >> n) || word != "rank" || n != rs.rank()) return std::nullopt;
  GroupElement c;
  if (!(in >> word) || word != "coxeter" || !read_matrix(in, n, c) || c != bipartite_coxeter(rs)) return std::nullopt;
  std::size_t count = 0;
  if (!(in >> word >> count) || word != "elements") return std::nullopt;
  std::vector<GroupElement> elems(count);
  std::vector<int> ranks(count);
  std::vector<TypeLabel> types(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::string t;
    if (!read_matrix(in, n, elems[i]) || !(in >> ranks[i] >> t)) return std::nullopt;
    try {
      types[i] = TypeLabel::parse(t);
    } catch (const InputError&) {
      return std::nullopt;
    }
  }
  if (!(in >> word) || word != "end") return std::nullopt;
  return NcPoset::from_elements(rs, elems, ranks, types, threads);
}

NcPoset load_or_enumerate(const RootSystem& rs, const std::optional<std::filesystem::path>& dir, int threads) {
  if (dir) {
    if (auto cached = read_cache(rs, *dir, threads)) return std::move(*cached);
  }
  NcPoset nc = NcPoset::enumerate(rs, threads);
  if (dir) write_cache(nc, *dir);
  return nc;
}

NcmPoset NcmPoset::build(const NcPoset& nc, int m) {
  if (m < 1) throw InputError("m must be positive");
  Rational estimate = zeta_closed(nc.ambient().label(), m).substitute_point(Var::z, 2).coefficient({0, 0, 0, 0});
  if (estimate > Rational(static_cast<long>(kSizeGuard)))
    throw ResourceGuardError("NC^m poset would exceed " + std::to_string(kSizeGuard) + " elements");
  if (nc.size() > 5000) throw ResourceGuardError("NC poset too large for an explicit order matrix");
  NcmPoset p;
  p.nc_ = &nc;
  p.m_ = m;
  p.nc_le_.assign(nc.size(), std::vector<char>(nc.size(), 0));
  for (int w = 0; w < nc.size(); ++w)
    for (const auto& f : nc.factors(w)) p.nc_le_[f.lower][w] = 1;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int rest, int depth) -> void {
    if (depth == m) {
      cur.push_back(rest);
      p.tuples_.push_back(cur);
      cur.pop_back();
      return;
    }
    for (const auto& f : nc.factors(rest)) {
      cur.push_back(f.lower);
      self(self, f.rest, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, nc.top(), 0);
  std::sort(p.tuples_.begin(), p.tuples_.end());
  for (std::size_t i = 0; i < p.tuples_.size(); ++i) {
    const auto& t = p.tuples_[i];
    p.rank_.push_back(nc.rank_of(t[0]));
    bool is_top = t[0] == nc.top();
    for (int k = 1; k <= m; ++k) is_top = is_top && t[k] == nc.bottom();
    if (is_top) p.top_ = static_cast<int>(i);
  }
  if (p.top_ < 0) throw ConsistencyError("NC^m poset lacks its maximal element");
  return p;
}

bool NcmPoset::le(int a, int b) const {
  const auto& u = tuples_[a];
  const auto& w = tuples_[b];
  for (int i = 1; i <= m_; ++i)
    if (!nc_le_[w[i]][u[i]]) return false;
  return true;
}

int NcmPoset::minimal_count() const {
  int count = 0;
  for (int a = 0; a < size(); ++a) {
    bool minimal = true;
    for (int b = 0; b < size() && minimal; ++b)
      if (b != a && le(b, a)) minimal = false;
    count += minimal;
  }
  return count;
}

ExplicitPoset ExplicitPoset::from(const NcPoset& nc) {
  if (static_cast<std::size_t>(nc.size()) > kMobiusGuard)
    throw ResourceGuardError("poset too large for an explicit order matrix");
  ExplicitPoset p;
  p.le.assign(nc.size(), std::vector<char>(nc.size(), 0));
  for (int w = 0; w < nc.size(); ++w) {
    p.rank.push_back(nc.rank_of(w));
    for (const auto& f : nc.factors(w)) p.le[f.lower][w] = 1;
  }
  return p;
}

ExplicitPoset ExplicitPoset::from(const NcmPoset& ncm) {
  if (static_cast<std::size_t>(ncm.size()) > kMobiusGuard)
    throw ResourceGuardError("poset too large for an explicit order matrix");
  ExplicitPoset p;
  p.le.assign(ncm.size(), std::vector<char>(ncm.size(), 0));
  for (int a = 0; a < ncm.size(); ++a) {
    p.rank.push_back(ncm.rank_of(a));
    for (int b = 0; b < ncm.size(); ++b) p.le[a][b] = ncm.le(a, b);
  }
  return p;
}

std::vector<std::vector<long long>> mobius(const ExplicitPoset& p) {
  const std::size_t n = p.size();
  if (n > ExplicitPoset::kMobiusGuard) throw ResourceGuardError("poset too large for all-pairs Moebius values");
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return p.rank[a] < p.rank[b]; });
  std::vector<std::vector<long long>> mu(n, std::vector<long long>(n, 0));
  for (std::size_t a = 0; a < n; ++a) {
    // Elements above a, visited by increasing rank.
    std::vector<std::size_t> above;
    for (std::size_t b : order)
      if (p.le[a][b]) above.push_back(b);
    for (std::size_t b : above) {
      if (b == a) {
        mu[a][b] = 1;
        continue;
      }
      long long s = 0;
      for (std::size_t v : above)
        if (v != b && p.le[v][b]) s += mu[a][v];
      mu[a][b] = -s;
    }
  }
  return mu;
}

std::vector<Integer> mobius_to_top(const NcPoset& nc) {
  std::vector<Integer> mu(nc.size()), acc(nc.size());
  for (int r = nc.rank(); r >= 0; --r) {
    for (int w : nc.levels()[r]) {
      mu[w] = (w == nc.top()) ? Integer(1) : Integer(-acc[w]);
      for (const auto& f : nc.factors(w))
        if (f.lower != w) acc[f.lower] += mu[w];
    }
  }
  return mu;
}

Integer zeta_direct(const ExplicitPoset& p, int z) {
  if (z < 1) throw InputError("zeta argument must be at least 1");
  if (z == 1) return 1;
  const std::size_t n = p.size();
  std::vector<Integer> f(n, 1);
  for (int step = 2; step < z; ++step) {
    std::vector<Integer> g(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        if (p.le[a][b]) g[b] += f[a];
    f.swap(g);
  }
  Integer s = 0;
  for (const auto& v : f) s += v;
  return s;
}

Integer zeta_direct(const NcPoset& nc, int z) {
  if (z < 1) throw InputError("zeta argument must be at least 1");
  if (z == 1) return 1;
  std::vector<Integer> f(nc.size(), 1);
  for (int step = 2; step < z; ++step) {
    std::vector<Integer> g(nc.size(), 0);
    for (int w = 0; w < nc.size(); ++w)
      for (const auto& fac : nc.factors(w)) g[w] += f[fac.lower];
    f.swap(g);
  }
  Integer s = 0;
  for (const auto& v : f) s += v;
  return s;
}

Poly zeta_closed(const TypeLabel& t, std::optional<int> m) {
  Poly mm = m ? Poly(static_cast<long>(*m)) : Poly::variable(Var::m);
  Poly zm1 = Poly::variable(Var::z) - Poly(1);
  Poly out(1);
  for (const auto& comp : t.components()) {
    long h = coxeter_number_of(comp);
    for (int d : degrees_of(comp.family, comp.rank)) {
      Poly factor = zm1 * mm * Rational(h) + Poly(static_cast<long>(d));
      out *= factor * (Rational(1) / d);
    }
  }
  return out;
}

Poly characteristic_direct(const NcPoset& nc) {
  auto mu = mobius_to_top(nc);
  Poly chi;
  for (int u = 0; u < nc.size(); ++u) chi.add_term(Rational(mu[u]), {0, nc.rank_of(u), 0, 0});
  return chi;
}

void ChiCatalog::set(const TypeLabel& irreducible, Poly chi) {
  if (!irreducible.is_irreducible()) throw InputError("catalog entries are irreducible types");
  chi_[irreducible] = std::move(chi);
}

bool ChiCatalog::has(const TypeLabel& t) const {
  for (const auto& c : t.components())
    if (!chi_.count(TypeLabel::from_components({c}))) return false;
  return true;
}

Poly ChiCatalog::get(const TypeLabel& t) const {
  Poly out(1);
  for (const auto& c : t.components()) {
    auto it = chi_.find(TypeLabel::from_components({c}));
    if (it == chi_.end())
      throw DependencyError("characteristic polynomial of " + TypeLabel::from_components({c}).str() + " unavailable");
    out *= it->second;
  }
  return out;
}

Rational ChiCatalog::mu(const TypeLabel& t) const { return get(t).coefficient({0, 0, 0, 0}); }

PairCounts full_rank_pairs(const NcPoset& nc) {
  PairCounts out;
  for (const auto& f : nc.factors(nc.top()))
    if (f.lower != nc.bottom() && f.rest != nc.bottom()) out[{nc.type_of(f.lower), nc.type_of(f.rest)}] += 1;
  return out;
}

Poly characteristic_recursive(const TypeLabel& t, const PairCounts& pairs, const ChiCatalog& lower) {
  if (t.empty()) return Poly(1);
  if (!t.is_irreducible()) return lower.get(t);
  const int n = t.rank();
  Poly chi = Poly::variable(Var::y, n);
  for (const auto& [key, count] : pairs) {
    const auto& [t1, t2] = key;
    if (t1.rank() + t2.rank() != n) throw InputError("pair count of wrong rank for " + t.str());
    if (!lower.has(t2))
      throw DependencyError("characteristic polynomial of " + t2.str() + " unavailable for " + t.str());
    chi.add_term(Rational(count) * lower.mu(t2), {0, t1.rank(), 0, 0});
  }
  Rational at_one = chi.evaluate({Rational(0), Rational(1), Rational(0), Rational(0)});
  chi.add_term(-at_one, {0, 0, 0, 0});
  return chi;
}

}  // namespace ncd
