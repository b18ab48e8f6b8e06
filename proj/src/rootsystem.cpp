#include "ncd/rootsystem.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

#include "ncd/errors.hpp"

namespace ncd {

DynkinDiagram::DynkinDiagram(int nodes) : n_(nodes), adj_(nodes, std::vector<char>(nodes, 0)) {}

void DynkinDiagram::connect(int i, int j) {
  if (i == j) throw InputError("diagram loops are not allowed");
  adj_.at(i).at(j) = adj_.at(j).at(i) = 1;
}

int DynkinDiagram::degree(int i) const {
  int d = 0;
  for (int j = 0; j < n_; ++j) d += adj_[i][j];
  return d;
}

DynkinDiagram DynkinDiagram::induced(const std::vector<int>& nodes) const {
  DynkinDiagram d(static_cast<int>(nodes.size()));
  for (std::size_t a = 0; a < nodes.size(); ++a)
    for (std::size_t b = a + 1; b < nodes.size(); ++b)
      if (adjacent(nodes[a], nodes[b])) d.connect(static_cast<int>(a), static_cast<int>(b));
  return d;
}

std::vector<std::vector<int>> DynkinDiagram::components() const {
  std::vector<int> seen(n_, 0);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < n_; ++s) {
    if (seen[s]) continue;
    std::vector<int> comp;
    std::deque<int> q{s};
    seen[s] = 1;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      comp.push_back(v);
      for (int w = 0; w < n_; ++w)
        if (adj_[v][w] && !seen[w]) {
          seen[w] = 1;
          q.push_back(w);
        }
    }
    std::sort(comp.begin(), comp.end());
    out.push_back(std::move(comp));
  }
  return out;
}

namespace {

Component classify_component(const DynkinDiagram& d) {
  const int k = d.size();
  int edges = 0, branch = -1, branches = 0, max_deg = 0;
  for (int i = 0; i < k; ++i) {
    int deg = d.degree(i);
    edges += deg;
    max_deg = std::max(max_deg, deg);
    if (deg >= 3) {
      branch = i;
      ++branches;
    }
  }
  edges /= 2;
  if (edges != k - 1) throw ConsistencyError("diagram component is not a tree");
  if (max_deg <= 2) return {'A', k};
  if (max_deg > 3 || branches != 1) throw ConsistencyError("diagram component is not of ADE shape");
  std::vector<int> arms;
  for (int start = 0; start < k; ++start) {
    if (!d.adjacent(branch, start)) continue;
    int len = 1, prev = branch, cur = start;
    while (true) {
      int next = -1;
      for (int j = 0; j < k; ++j)
        if (j != prev && d.adjacent(cur, j)) next = j;
      if (next < 0) break;
      prev = cur;
      cur = next;
      ++len;
    }
    arms.push_back(len);
  }
  std::sort(arms.begin(), arms.end());
  if (arms[0] == 1 && arms[1] == 1) return {'D', k};
  if (arms[0] == 1 && arms[1] == 2 && arms[2] >= 2 && arms[2] <= 4) return {'E', k};
  throw ConsistencyError("diagram component is not of ADE shape");
}

std::vector<std::pair<int, int>> standard_edges(char family, int n) {
  std::vector<std::pair<int, int>> e;
  switch (family) {
    case 'A':
      for (int i = 0; i + 1 < n; ++i) e.push_back({i, i + 1});
      break;
    case 'D':
      for (int i = 0; i + 2 < n; ++i) e.push_back({i, i + 1});
      e.push_back({n - 3, n - 1});
      break;
    case 'E':
      e.push_back({0, 2});
      e.push_back({1, 3});
      for (int i = 2; i + 1 < n; ++i) e.push_back({i, i + 1});
      break;
    default:
      throw InputError("unknown family");
  }
  return e;
}

Integer group_order_formula(const Component& c) {
  switch (c.family) {
    case 'A':
      return factorial(c.rank + 1);
    case 'D': {
      Integer r = factorial(c.rank);
      mpz_mul_2exp(r.get_mpz_t(), r.get_mpz_t(), c.rank - 1);
      return r;
    }
    default:
      return c.rank == 6 ? Integer(51840) : c.rank == 7 ? Integer(2903040) : Integer(696729600);
  }
}

}  // namespace

TypeLabel classify_diagram(const DynkinDiagram& d) {
  std::vector<Component> comps;
  for (const auto& nodes : d.components()) comps.push_back(classify_component(d.induced(nodes)));
  return TypeLabel::from_components(std::move(comps));
}

std::vector<int> degrees_of(char family, int rank) {
  std::vector<int> d;
  switch (family) {
    case 'A':
      for (int i = 2; i <= rank + 1; ++i) d.push_back(i);
      break;
    case 'D':
      for (int i = 1; i < rank; ++i) d.push_back(2 * i);
      d.push_back(rank);
      break;
    case 'E':
      if (rank == 6) d = {2, 5, 6, 8, 9, 12};
      if (rank == 7) d = {2, 6, 8, 10, 12, 14, 18};
      if (rank == 8) d = {2, 8, 12, 14, 18, 20, 24, 30};
      break;
  }
  std::sort(d.begin(), d.end());
  return d;
}

std::vector<int> degrees_of(const TypeLabel& t) {
  std::vector<int> d;
  for (const auto& c : t.components()) {
    auto dc = degrees_of(c.family, c.rank);
    d.insert(d.end(), dc.begin(), dc.end());
  }
  std::sort(d.begin(), d.end());
  return d;
}

int coxeter_number_of(const Component& c) {
  auto d = degrees_of(c.family, c.rank);
  return d.back();
}

std::uint64_t pack_root(const RootVec& v) {
  std::uint64_t k = 0;
  for (int i = 0; i < kMaxRank; ++i) k |= static_cast<std::uint64_t>(static_cast<std::uint8_t>(v[i])) << (8 * i);
  return k;
}

RootSystem RootSystem::build(char family, int rank) {
  bool ok = (family == 'A' && rank >= 1 && rank <= kMaxRank) ||
            (family == 'D' && rank >= 4 && rank <= kMaxRank) ||
            (family == 'E' && rank >= 6 && rank <= 8);
  if (!ok)
    throw InputError(std::string("unsupported root system ") + family + std::to_string(rank));
  return from_label(TypeLabel::irreducible(family, rank));
}

RootSystem RootSystem::from_label(const TypeLabel& label) {
  if (label.empty()) throw InputError("the empty type has no root system");
  if (label.rank() > kMaxRank) throw InputError("rank above " + std::to_string(kMaxRank) + " is not supported");
  RootSystem rs;
  rs.label_ = label;
  rs.n_ = label.rank();
  rs.diagram_ = DynkinDiagram(rs.n_);
  int offset = 0;
  for (const auto& c : label.components()) {
    for (auto [i, j] : standard_edges(c.family, c.rank)) rs.diagram_.connect(offset + i, offset + j);
    offset += c.rank;
  }
  rs.degrees_ = degrees_of(label);
  rs.finish();
  return rs;
}

void RootSystem::finish() {
  cartan_.assign(n_ * n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) cartan_[i * n_ + j] = i == j ? 2 : (diagram_.adjacent(i, j) ? -1 : 0);

  // Reflection closure from the simple roots.
  std::vector<RootVec> roots;
  std::vector<std::uint64_t> keys;
  auto known = [&](const RootVec& v) {
    return std::find(keys.begin(), keys.end(), pack_root(v)) != keys.end();
  };
  for (int i = 0; i < n_; ++i) {
    roots.push_back(simple_root(i));
    keys.push_back(pack_root(roots.back()));
  }
  for (std::size_t q = 0; q < roots.size(); ++q) {
    for (int i = 0; i < n_; ++i) {
      RootVec b = roots[q];
      int p = 0;
      for (int j = 0; j < n_; ++j) p += cartan(i, j) * b[j];
      if (p == 0) continue;
      b[i] = static_cast<std::int8_t>(b[i] - p);
      if (b[i] < 0 || known(b)) continue;
      roots.push_back(b);
      keys.push_back(pack_root(b));
    }
  }
  std::stable_sort(roots.begin(), roots.end(), [](const RootVec& a, const RootVec& b) {
    int ha = 0, hb = 0;
    for (int i = 0; i < kMaxRank; ++i) {
      ha += a[i];
      hb += b[i];
    }
    return ha < hb;
  });
  positive_ = std::move(roots);
  root_keys_.clear();
  for (std::size_t i = 0; i < positive_.size(); ++i)
    root_keys_.push_back({pack_root(positive_[i]), static_cast<int>(i)});
  std::sort(root_keys_.begin(), root_keys_.end());

  // BFS 2-colouring from the smallest node of each component.
  std::vector<int> color(n_, -1);
  for (const auto& comp : diagram_.components()) {
    std::deque<int> q{comp.front()};
    color[comp.front()] = 0;
    while (!q.empty()) {
      int v = q.front();
      q.pop_front();
      for (int w = 0; w < n_; ++w)
        if (diagram_.adjacent(v, w) && color[w] < 0) {
          color[w] = 1 - color[v];
          q.push_back(w);
        }
    }
  }
  bipartition_ = {};
  for (int i = 0; i < n_; ++i) bipartition_[color[i]].push_back(i);

  // Exact inverse of the Cartan matrix.
  std::vector<Rational> m(n_ * 2 * n_, Rational(0));
  for (int i = 0; i < n_; ++i) {
    for (int j = 0; j < n_; ++j) m[i * 2 * n_ + j] = cartan(i, j);
    m[i * 2 * n_ + n_ + i] = 1;
  }
  for (int c = 0; c < n_; ++c) {
    int p = c;
    while (m[p * 2 * n_ + c] == 0) ++p;
    for (int j = 0; j < 2 * n_; ++j) std::swap(m[p * 2 * n_ + j], m[c * 2 * n_ + j]);
    Rational piv = m[c * 2 * n_ + c];
    for (int j = 0; j < 2 * n_; ++j) m[c * 2 * n_ + j] /= piv;
    for (int i = 0; i < n_; ++i) {
      if (i == c || m[i * 2 * n_ + c] == 0) continue;
      Rational f = m[i * 2 * n_ + c];
      for (int j = 0; j < 2 * n_; ++j) m[i * 2 * n_ + j] -= f * m[c * 2 * n_ + j];
    }
  }
  Integer den = 1;
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Integer d = m[i * 2 * n_ + n_ + j].get_den();
      mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), d.get_mpz_t());
    }
  cinv_den_ = static_cast<int>(den.get_si());
  cinv_num_.assign(n_ * n_, 0);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      Rational v = m[i * 2 * n_ + n_ + j] * den;
      cinv_num_[i * n_ + j] = static_cast<int>(v.get_num().get_si());
    }

  // Catalog facts that must agree with the construction.
  std::size_t expected_roots = 0;
  for (const auto& c : label_.components()) {
    auto d = degrees_of(c.family, c.rank);
    Integer prod = 1;
    for (int x : d) prod *= x;
    if (prod != group_order_formula(c)) throw ConsistencyError("degree catalog disagrees with |W|");
    expected_roots += static_cast<std::size_t>(c.rank * d.back() / 2);
  }
  if (positive_.size() != expected_roots) throw ConsistencyError("positive root count differs from n*h/2");
  for (int b = 0; b < 2; ++b)
    for (int i : bipartition_[b])
      for (int j : bipartition_[b])
        if (i != j && cartan(i, j) != 0) throw ConsistencyError("bipartition block is not independent");
}

RootVec RootSystem::simple_root(int i) const {
  RootVec v{};
  v[i] = 1;
  return v;
}

int RootSystem::inner(const RootVec& a, const RootVec& b) const {
  int s = 0;
  for (int i = 0; i < n_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < n_; ++j) s += a[i] * cartan(i, j) * b[j];
  }
  return s;
}

int RootSystem::root_index(const RootVec& v) const {
  RootVec p = v;
  bool negative = false;
  for (int i = 0; i < kMaxRank; ++i) {
    if (v[i] < 0) negative = true;
  }
  if (negative)
    for (auto& x : p) x = static_cast<std::int8_t>(-x);
  std::pair<std::uint64_t, int> k{pack_root(p), -1};
  auto it = std::lower_bound(root_keys_.begin(), root_keys_.end(), k);
  if (it == root_keys_.end() || it->first != k.first) return -1;
  return it->second;
}

bool RootSystem::is_root(const RootVec& v) const { return root_index(v) >= 0; }

int RootSystem::coxeter_number() const {
  if (!label_.is_irreducible()) throw InputError("Coxeter number requested for a reducible system");
  return degrees_.back();
}

Integer RootSystem::group_order() const {
  Integer r = 1;
  for (int d : degrees_) r *= d;
  return r;
}

std::set<TypeLabel> subdiagram_types(const RootSystem& rs) {
  std::set<TypeLabel> out;
  const int n = rs.rank();
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    std::vector<int> nodes;
    for (int i = 0; i < n; ++i)
      if (mask & (1u << i)) nodes.push_back(i);
    out.insert(classify_diagram(rs.diagram().induced(nodes)));
  }
  return out;
}

bool is_subdiagram_type(const RootSystem& rs, const TypeLabel& t) {
  auto s = subdiagram_types(rs);
  return s.count(t) > 0;
}

int single_node_deletion_count(const RootSystem& rs, const TypeLabel& t) {
  if (t.rank() != rs.rank() - 1) throw InputError("single node deletion needs a corank-one type");
  int count = 0;
  for (int skip = 0; skip < rs.rank(); ++skip) {
    std::vector<int> nodes;
    for (int i = 0; i < rs.rank(); ++i)
      if (i != skip) nodes.push_back(i);
    if (classify_diagram(rs.diagram().induced(nodes)) == t) ++count;
  }
  return count;
}

}  // namespace ncd
