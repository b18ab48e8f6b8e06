#include "ncd/weyl.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ncd/errors.hpp"

namespace ncd {

namespace {

using Row = std::array<std::int64_t, kMaxRank>;

std::int64_t gcd64(std::int64_t a, std::int64_t b) { return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b); }

std::int64_t narrow(__int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) throw ConsistencyError("integer overflow in lattice elimination");
  return static_cast<std::int64_t>(v);
}

void normalize(Row& r, int n) {
  std::int64_t g = 0;
  for (int j = 0; j < n; ++j) g = gcd64(g, r[j]);
  if (g > 1)
    for (int j = 0; j < n; ++j) r[j] /= g;
}

// Reduced row echelon form over Z (rows kept primitive). Returns the pivot
// columns in row order.
std::vector<int> integer_rref(std::vector<Row>& m, int n) {
  std::vector<int> pivots;
  std::size_t r = 0;
  for (int c = 0; c < n && r < m.size(); ++c) {
    std::size_t p = r;
    while (p < m.size() && m[p][c] == 0) ++p;
    if (p == m.size()) continue;
    std::swap(m[p], m[r]);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || m[i][c] == 0) continue;
      std::int64_t a = m[r][c], b = m[i][c];
      for (int j = 0; j < n; ++j)
        m[i][j] = narrow(static_cast<__int128>(a) * m[i][j] - static_cast<__int128>(b) * m[r][j]);
      normalize(m[i], n);
    }
    pivots.push_back(c);
    ++r;
  }
  m.resize(r);
  return pivots;
}

std::vector<Row> matrix_rows(const GroupElement& w, bool transpose, bool minus_identity) {
  int n = w.dim();
  std::vector<Row> rows(n);
  for (int i = 0; i < n; ++i) {
    rows[i].fill(0);
    for (int j = 0; j < n; ++j) {
      int v = transpose ? w.at(j, i) : w.at(i, j);
      if (minus_identity && i == j) v -= 1;
      rows[i][j] = v;
    }
  }
  return rows;
}

}  // namespace

GroupElement GroupElement::identity(int n) {
  if (n < 0 || n > kMaxRank) throw InputError("rank out of range");
  GroupElement g;
  g.n_ = static_cast<std::uint8_t>(n);
  for (int i = 0; i < n; ++i) g.set(i, i, 1);
  return g;
}

GroupElement operator*(const GroupElement& a, const GroupElement& b) {
  if (a.n_ != b.n_) throw InputError("group elements of different rank");
  GroupElement r;
  r.n_ = a.n_;
  int n = std::min<int>(a.n_, kMaxRank);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = 0;
      for (int k = 0; k < n; ++k) s += a.at(i, k) * b.at(k, j);
      if (s > 127 || s < -128) throw ConsistencyError("group element entry out of range");
      r.set(i, j, s);
    }
  return r;
}

RootVec GroupElement::apply(const RootVec& v) const {
  RootVec out{};
  for (int i = 0; i < n_; ++i) {
    int s = 0;
    for (int j = 0; j < n_; ++j) s += at(i, j) * v[j];
    out[i] = static_cast<std::int8_t>(s);
  }
  return out;
}

bool GroupElement::is_identity() const { return *this == identity(n_); }

std::size_t GroupElementHash::operator()(const GroupElement& g) const {
  std::size_t h = 1469598103934665603ull ^ g.dim();
  const auto& d = g.data();
  for (std::size_t k = 0; k < d.size(); k += 8) {
    std::uint64_t word = 0;
    for (std::size_t b = 0; b < 8; ++b) word |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(d[k + b])) << (8 * b);
    h ^= word + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
  }
  return h;
}

GroupElement reflection(const RootSystem& rs, const RootVec& root) {
  if (!rs.is_root(root)) throw InputError("reflection requested for a non-root vector");
  int n = rs.rank();
  GroupElement g = GroupElement::identity(n);
  for (int j = 0; j < n; ++j) {
    // <alpha, e_j> through the Cartan form
    int pairing = 0;
    for (int k = 0; k < n; ++k) pairing += root[k] * rs.cartan(k, j);
    for (int i = 0; i < n; ++i) g.set(i, j, (i == j ? 1 : 0) - pairing * root[i]);
  }
  return g;
}

GroupElement simple_reflection(const RootSystem& rs, int i) { return reflection(rs, rs.simple_root(i)); }

GroupElement inverse(const RootSystem& rs, const GroupElement& w) {
  // w preserves the Cartan form C, so w^-1 = C^-1 w^T C.
  int n = rs.rank();
  std::vector<long> wtc(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long s = 0;
      for (int k = 0; k < n; ++k) s += w.at(k, i) * rs.cartan(k, j);
      wtc[i * n + j] = s;
    }
  GroupElement r = GroupElement::identity(n);
  long den = rs.cartan_inverse_den();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      long s = 0;
      for (int k = 0; k < n; ++k) s += rs.cartan_inverse_num(i, k) * wtc[k * n + j];
      if (s % den != 0) throw ConsistencyError("matrix does not preserve the root lattice form");
      r.set(i, j, static_cast<int>(s / den));
    }
  return r;
}

int absolute_length(const GroupElement& w) {
  auto rows = matrix_rows(w, false, true);
  return static_cast<int>(integer_rref(rows, w.dim()).size());
}

bool le_absolute(const GroupElement& u, const GroupElement& w, const RootSystem& rs) {
  return absolute_length(u) + absolute_length(inverse(rs, u) * w) == absolute_length(w);
}

GroupElement bipartite_coxeter(const RootSystem& rs) {
  GroupElement c = GroupElement::identity(rs.rank());
  for (int block = 0; block < 2; ++block)
    for (int i : rs.bipartition()[block]) c = c * simple_reflection(rs, i);
  if (rs.label().is_irreducible() && multiplicative_order(c) != rs.coxeter_number())
    throw ConsistencyError("bipartite Coxeter element has the wrong order");
  return c;
}

int multiplicative_order(const GroupElement& w) {
  GroupElement p = w;
  for (int k = 1; k <= 1000; ++k) {
    if (p.is_identity()) return k;
    p = p * w;
  }
  throw ConsistencyError("element order exceeds search bound");
}

bool preserves_form(const RootSystem& rs, const GroupElement& w) {
  int n = rs.rank();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = 0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) s += w.at(k, i) * rs.cartan(k, l) * w.at(l, j);
      if (s != rs.cartan(i, j)) return false;
    }
  return true;
}

MovedSpace::MovedSpace(const GroupElement& w) : n_(w.dim()) {
  // Functionals vanishing on im(w - 1) form the nullspace of (w - 1)^T.
  auto rows = matrix_rows(w, true, true);
  auto pivots = integer_rref(rows, n_);
  dim_ = static_cast<int>(pivots.size());
  std::vector<char> is_pivot(n_, 0);
  for (int c : pivots) is_pivot[c] = 1;
  std::int64_t l = 1;
  for (std::size_t k = 0; k < pivots.size(); ++k) {
    std::int64_t p = rows[k][pivots[k]];
    if (p < 0) p = -p;
    l = l / gcd64(l, p) * p;
  }
  for (int f = 0; f < n_; ++f) {
    if (is_pivot[f]) continue;
    Row v{};
    v.fill(0);
    v[f] = l;
    for (std::size_t k = 0; k < pivots.size(); ++k)
      v[pivots[k]] = -rows[k][f] * (l / rows[k][pivots[k]]);
    normalize(v, n_);
    annihilators_.push_back(v);
  }
}

bool MovedSpace::contains(const RootVec& v) const {
  for (const auto& a : annihilators_) {
    std::int64_t s = 0;
    for (int i = 0; i < n_; ++i) s += a[i] * v[i];
    if (s != 0) return false;
  }
  return true;
}

std::vector<int> moved_positive_roots(const RootSystem& rs, const GroupElement& w) {
  MovedSpace mov(w);
  std::vector<int> out;
  const auto& roots = rs.positive_roots();
  for (std::size_t i = 0; i < roots.size(); ++i)
    if (mov.contains(roots[i])) out.push_back(static_cast<int>(i));
  return out;
}

TypeLabel parabolic_type_unchecked(const RootSystem& rs, const GroupElement& w) {
  auto sub = moved_positive_roots(rs, w);
  if (sub.empty()) return {};
  const auto& roots = rs.positive_roots();
  std::unordered_set<std::uint64_t> present;
  for (int i : sub) present.insert(pack_root(roots[i]));
  // Simple roots of the sub-system: positive roots not a sum of two others.
  std::vector<RootVec> simple;
  for (int i : sub) {
    bool decomposable = false;
    for (int j : sub) {
      if (j == i) continue;
      RootVec d{};
      bool nonneg = true;
      for (int k = 0; k < rs.rank(); ++k) {
        d[k] = static_cast<std::int8_t>(roots[i][k] - roots[j][k]);
        if (d[k] < 0) nonneg = false;
      }
      if (nonneg && present.count(pack_root(d))) {
        decomposable = true;
        break;
      }
    }
    if (!decomposable) simple.push_back(roots[i]);
  }
  DynkinDiagram d(static_cast<int>(simple.size()));
  for (std::size_t a = 0; a < simple.size(); ++a)
    for (std::size_t b = a + 1; b < simple.size(); ++b)
      if (rs.inner(simple[a], simple[b]) != 0) d.connect(static_cast<int>(a), static_cast<int>(b));
  TypeLabel t = classify_diagram(d);
  if (t.rank() != absolute_length(w)) throw ConsistencyError("moved sub-system rank differs from absolute length");
  return t;
}

TypeLabel classify_parabolic_type(const RootSystem& rs, const GroupElement& w, const GroupElement& c) {
  if (w.dim() != rs.rank()) throw InputError("element rank does not match root system");
  if (!le_absolute(w, c, rs)) throw InputError("element is not below the Coxeter element");
  return parabolic_type_unchecked(rs, w);
}

std::vector<ReflectionOrbit> reflection_orbits(const RootSystem& rs) {
  GroupElement c = bipartite_coxeter(rs);
  const auto& roots = rs.positive_roots();
  std::vector<char> seen(roots.size(), 0);
  std::vector<char> simple(roots.size(), 0);
  for (int i = 0; i < rs.rank(); ++i) simple[rs.root_index(rs.simple_root(i))] = 1;
  std::vector<ReflectionOrbit> out;
  for (std::size_t start = 0; start < roots.size(); ++start) {
    if (seen[start]) continue;
    ReflectionOrbit orb;
    int cur = static_cast<int>(start);
    while (!seen[cur]) {
      seen[cur] = 1;
      orb.roots.push_back(cur);
      if (simple[cur]) ++orb.simple_count;
      cur = rs.root_index(c.apply(roots[cur]));
    }
    orb.size = static_cast<int>(orb.roots.size());
    GroupElement t = reflection(rs, roots[start]);
    orb.tc_type = parabolic_type_unchecked(rs, t * c);
    out.push_back(std::move(orb));
  }
  return out;
}

}  // namespace ncd
