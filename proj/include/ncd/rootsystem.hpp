#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "ncd/exact.hpp"
#include "ncd/typelabel.hpp"

namespace ncd {

inline constexpr int kMaxRank = 8;

// Root coordinates in the simple-root basis.
using RootVec = std::array<std::int8_t, kMaxRank>;

class DynkinDiagram {
 public:
  explicit DynkinDiagram(int nodes = 0);
  int size() const { return n_; }
  void connect(int i, int j);
  bool adjacent(int i, int j) const { return adj_[i][j] != 0; }
  int degree(int i) const;
  DynkinDiagram induced(const std::vector<int>& nodes) const;
  // Connected components as sorted node lists.
  std::vector<std::vector<int>> components() const;

 private:
  int n_;
  std::vector<std::vector<char>> adj_;
};

TypeLabel classify_diagram(const DynkinDiagram& d);

class RootSystem {
 public:
  // Irreducible ADE system; rejects pairs such as D3 or E9.
  static RootSystem build(char family, int rank);
  // Block-diagonal direct sum for reducible labels.
  static RootSystem from_label(const TypeLabel& label);

  const TypeLabel& label() const { return label_; }
  int rank() const { return n_; }
  int cartan(int i, int j) const { return cartan_[i * n_ + j]; }
  const DynkinDiagram& diagram() const { return diagram_; }
  const std::vector<RootVec>& positive_roots() const { return positive_; }
  RootVec simple_root(int i) const;
  int inner(const RootVec& a, const RootVec& b) const;
  bool is_root(const RootVec& v) const;
  int root_index(const RootVec& v) const;  // index of ±v among positive roots, or -1

  // Defined for irreducible systems only.
  int coxeter_number() const;
  const std::vector<int>& degrees() const { return degrees_; }
  Integer group_order() const;
  // First block contains node 0 of each component.
  const std::array<std::vector<int>, 2>& bipartition() const { return bipartition_; }

  // Rational inverse of the Cartan matrix as integer numerators over a
  // common denominator.
  int cartan_inverse_num(int i, int j) const { return cinv_num_[i * n_ + j]; }
  int cartan_inverse_den() const { return cinv_den_; }

 private:
  TypeLabel label_;
  int n_ = 0;
  std::vector<int> cartan_;
  DynkinDiagram diagram_;
  std::vector<RootVec> positive_;
  std::vector<int> degrees_;
  std::array<std::vector<int>, 2> bipartition_;
  std::vector<int> cinv_num_;
  int cinv_den_ = 1;
  std::vector<std::pair<std::uint64_t, int>> root_keys_;  // sorted (packed root, index)

  void finish();
};

std::uint64_t pack_root(const RootVec& v);

// Types of induced subgraphs over all node subsets, empty one included.
std::set<TypeLabel> subdiagram_types(const RootSystem& rs);
bool is_subdiagram_type(const RootSystem& rs, const TypeLabel& t);
int single_node_deletion_count(const RootSystem& rs, const TypeLabel& t);

// Degree catalog of an irreducible type.
std::vector<int> degrees_of(char family, int rank);
// Degrees of all components concatenated.
std::vector<int> degrees_of(const TypeLabel& t);
int coxeter_number_of(const Component& c);

}  // namespace ncd
