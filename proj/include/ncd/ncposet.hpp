#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ncd/exact.hpp"
#include "ncd/weyl.hpp"

namespace ncd {

// y = lower * rest with lower <= y (hence rest <= y as well).
struct Factor {
  int lower;
  int rest;
};

// The interval [e, c] of the absolute order, graded by absolute length.
class NcPoset {
 public:
  static NcPoset enumerate(const RootSystem& rs, int threads = 1);
  // Rebuilds a poset from stored elements; every element is re-validated
  // and its type recomputed for comparison with the stored one.
  static NcPoset from_elements(const RootSystem& rs, const std::vector<GroupElement>& elements,
                               const std::vector<int>& ranks, const std::vector<TypeLabel>& types,
                               int threads = 1);

  const RootSystem& ambient() const { return rs_; }
  const GroupElement& coxeter() const { return elements_[top_]; }
  int size() const { return static_cast<int>(elements_.size()); }
  int rank() const { return rs_.rank(); }
  const GroupElement& element(int i) const { return elements_[i]; }
  int rank_of(int i) const { return ranks_[i]; }
  int type_id(int i) const { return type_ids_[i]; }
  const TypeLabel& type_of(int i) const { return type_names_[type_ids_[i]]; }
  const std::vector<TypeLabel>& type_names() const { return type_names_; }
  // -1 when the type never occurs.
  int find_type(const TypeLabel& t) const;
  int index_of(const GroupElement& g) const;
  int bottom() const { return 0; }
  int top() const { return top_; }
  // Element indices per rank; elements are stored level by level.
  const std::vector<std::vector<int>>& levels() const { return levels_; }
  std::vector<int> level_sizes() const;
  int complement(int i) const { return complement_[i]; }

  // All factorizations of y, sorted by (type of lower, lower).
  std::span<const Factor> factors(int y) const;
  // Factorizations of y whose lower part has the given type id.
  std::span<const Factor> factors(int y, int type_id) const;
  std::size_t interval_count() const { return factor_data_.size(); }

  bool le(int u, int w) const;
  std::map<TypeLabel, int> type_census() const;

 private:
  RootSystem rs_;
  std::vector<GroupElement> elements_;
  std::vector<int> ranks_;
  std::vector<int> type_ids_;
  std::vector<TypeLabel> type_names_;
  std::unordered_map<GroupElement, int, GroupElementHash> index_;
  std::vector<std::vector<int>> levels_;
  std::vector<int> complement_;
  std::vector<std::size_t> factor_offsets_;
  std::vector<Factor> factor_data_;
  int top_ = 0;

  void index_and_factor(int threads);
};

// Whole-group filter by l(w) + l(w^-1 c) = n; only sensible for small groups.
std::vector<GroupElement> nc_by_group_filter(const RootSystem& rs);
std::vector<GroupElement> whole_group(const RootSystem& rs, std::size_t limit);

// Text record stream, one file per ambient label.
inline constexpr int kCacheSchemaVersion = 1;
std::filesystem::path cache_path(const std::filesystem::path& dir, const TypeLabel& label);
void write_cache(const NcPoset& nc, const std::filesystem::path& dir);
// Empty when the file is missing or carries another schema or label.
std::optional<NcPoset> read_cache(const RootSystem& rs, const std::filesystem::path& dir, int threads = 1);
// Reads from the cache when possible, otherwise enumerates and stores.
NcPoset load_or_enumerate(const RootSystem& rs, const std::optional<std::filesystem::path>& dir, int threads = 1);

// m-divisible generalisation: tuples (w0; w1, ..., wm) of NC elements with
// product c and absolute lengths adding up to n.
class NcmPoset {
 public:
  static constexpr std::size_t kSizeGuard = 100000;
  static NcmPoset build(const NcPoset& nc, int m);

  int m() const { return m_; }
  int size() const { return static_cast<int>(tuples_.size()); }
  const std::vector<int>& tuple(int i) const { return tuples_[i]; }  // NC indices
  int rank_of(int i) const { return rank_[i]; }
  bool le(int a, int b) const;
  int top() const { return top_; }
  int minimal_count() const;

 private:
  const NcPoset* nc_ = nullptr;
  int m_ = 0;
  std::vector<std::vector<int>> tuples_;
  std::vector<int> rank_;
  std::vector<std::vector<char>> nc_le_;  // nc_le_[u][w]: u <= w
  int top_ = -1;
};

// Graded poset given by an explicit order matrix, for the small oracles.
struct ExplicitPoset {
  std::vector<int> rank;
  std::vector<std::vector<char>> le;  // le[a][b]: a <= b
  static constexpr std::size_t kMobiusGuard = 10000;
  static ExplicitPoset from(const NcPoset& nc);
  static ExplicitPoset from(const NcmPoset& ncm);
  std::size_t size() const { return rank.size(); }
};

// Full matrix of Moebius values mu(a, b).
std::vector<std::vector<long long>> mobius(const ExplicitPoset& p);
// mu(u, top) for every element of NC.
std::vector<Integer> mobius_to_top(const NcPoset& nc);

Integer zeta_direct(const ExplicitPoset& p, int z);
Integer zeta_direct(const NcPoset& nc, int z);
// prod ((z - 1) m h + d_i) / d_i over irreducible components; symbolic m
// when m is empty.
Poly zeta_closed(const TypeLabel& t, std::optional<int> m);

// Reciprocal characteristic polynomial in y.
Poly characteristic_direct(const NcPoset& nc);

// Catalog of reciprocal characteristic polynomials of irreducible types,
// extended by multiplicativity to reducible labels.
class ChiCatalog {
 public:
  void set(const TypeLabel& irreducible, Poly chi);
  bool has(const TypeLabel& t) const;
  Poly get(const TypeLabel& t) const;
  // Constant term, i.e. the Moebius value of the whole lattice.
  Rational mu(const TypeLabel& t) const;
  const std::map<TypeLabel, Poly>& entries() const { return chi_; }

 private:
  std::map<TypeLabel, Poly> chi_;
};

// Pair counts N(T1, T2) of full rank, keyed by ordered pair.
using PairCounts = std::map<std::pair<TypeLabel, TypeLabel>, Integer>;
PairCounts full_rank_pairs(const NcPoset& nc);

// Builds chi* of t from ordered pair counts and lower-rank chi values; the
// top Moebius value is solved from chi*(1) = 0.
Poly characteristic_recursive(const TypeLabel& t, const PairCounts& pairs, const ChiCatalog& lower);

}  // namespace ncd
