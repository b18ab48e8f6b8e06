#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "ncd/rootsystem.hpp"

namespace ncd {

// Integer matrix acting on the root lattice in the simple-root basis;
// column j holds the image of the j-th simple root.  Stored row-major with
// stride kMaxRank and zero padding, so equality and hashing use the whole
// buffer.
class GroupElement {
 public:
  GroupElement() = default;
  static GroupElement identity(int n);

  int dim() const { return n_; }
  int at(int i, int j) const { return a_[i * kMaxRank + j]; }
  void set(int i, int j, int v) { a_[i * kMaxRank + j] = static_cast<std::int8_t>(v); }
  const std::array<std::int8_t, kMaxRank * kMaxRank>& data() const { return a_; }

  friend GroupElement operator*(const GroupElement& a, const GroupElement& b);
  bool operator==(const GroupElement& o) const { return n_ == o.n_ && a_ == o.a_; }
  bool operator!=(const GroupElement& o) const { return !(*this == o); }

  RootVec apply(const RootVec& v) const;
  bool is_identity() const;

 private:
  std::array<std::int8_t, kMaxRank * kMaxRank> a_{};
  std::uint8_t n_ = 0;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const;
};

GroupElement reflection(const RootSystem& rs, const RootVec& root);
GroupElement simple_reflection(const RootSystem& rs, int i);
GroupElement inverse(const RootSystem& rs, const GroupElement& w);

// n minus the dimension of the fixed space, by exact integer rank.
int absolute_length(const GroupElement& w);
bool le_absolute(const GroupElement& u, const GroupElement& w, const RootSystem& rs);

// Product of the simple reflections of the first bipartition block, then
// those of the second.
GroupElement bipartite_coxeter(const RootSystem& rs);
int multiplicative_order(const GroupElement& w);
bool preserves_form(const RootSystem& rs, const GroupElement& w);

// The image of (w - 1) described by integer functionals vanishing on it.
class MovedSpace {
 public:
  MovedSpace(const GroupElement& w);  // NOLINT(google-explicit-constructor)
  bool contains(const RootVec& v) const;
  int dimension() const { return dim_; }

 private:
  int n_;
  int dim_;
  std::vector<std::array<std::int64_t, kMaxRank>> annihilators_;
};

// Positive roots lying in the moved space of w, i.e. the positive roots of
// the parabolic sub-root-system attached to w.
std::vector<int> moved_positive_roots(const RootSystem& rs, const GroupElement& w);

// Type of w as a parabolic Coxeter element, assuming w lies below a Coxeter
// element.
TypeLabel parabolic_type_unchecked(const RootSystem& rs, const GroupElement& w);
// Checked variant: throws unless w <=_T c.
TypeLabel classify_parabolic_type(const RootSystem& rs, const GroupElement& w, const GroupElement& c);

struct ReflectionOrbit {
  std::vector<int> roots;  // indices into positive_roots
  int size = 0;
  int simple_count = 0;    // how many simple reflections lie in the orbit
  TypeLabel tc_type;       // type of t*c for the representative t
};

// Orbits of reflections under conjugation by the bipartite Coxeter element.
std::vector<ReflectionOrbit> reflection_orbits(const RootSystem& rs);

}  // namespace ncd
