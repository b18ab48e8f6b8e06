#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncd/exact.hpp"
#include "ncd/ncposet.hpp"
#include "ncd/typelabel.hpp"

namespace ncd {

enum class Provenance { bruteforce, closed_form, product_rule, linear_system };
std::string to_string(Provenance p);

struct TableEntry {
  Integer value;
  Provenance provenance;
};

// Decomposition numbers of one ambient type keyed by canonical tuple.  Types
// outside `allowed` (the sub-diagram types) count zero without being stored.
class DecompositionTable {
 public:
  DecompositionTable() = default;
  DecompositionTable(TypeLabel ambient, std::set<TypeLabel> allowed);

  const TypeLabel& ambient() const { return ambient_; }
  int rank() const { return ambient_.rank(); }
  const std::set<TypeLabel>& allowed_types() const { return allowed_; }
  bool is_allowed(const TypeLabel& t) const { return t.empty() || allowed_.count(t) > 0; }

  void set(const TypeTuple& t, const Integer& v, Provenance p);
  std::optional<TableEntry> find(const TypeTuple& t) const;
  // Applies permutation invariance, drops empty entries and the zero rule;
  // an absent allowed tuple is a dependency error.
  Integer value(const TypeTuple& t) const;
  bool has_value(const TypeTuple& t) const;

  const std::map<TypeTuple, TableEntry, TypeTupleLess>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  DecompositionTable full_rank_only() const;

 private:
  TypeLabel ambient_;
  std::set<TypeLabel> allowed_;
  std::map<TypeTuple, TableEntry, TypeTupleLess> entries_;
};

// Recursive descent over the factor lists of NC, memoized on (remaining
// element, position in the tuple).  The tuple order is used as given.
Integer count_bruteforce(const NcPoset& nc, const TypeTuple& tuple);

// Every canonical tuple of nonempty sub-diagram types with rank sum at most
// the ambient rank, counted on NC.
DecompositionTable full_table(const NcPoset& nc, int threads = 1, bool full_rank_only = false);

// Closed form for ambient A_n, any rank sum.
Integer count_typeA(int n, const TypeTuple& tuple);

// Product rule for a direct sum, summing over all ways of splitting each
// entry between the factors.  Factor tables must hold full rank entries.
Integer count_product(const std::vector<const DecompositionTable*>& factors, const TypeTuple& tuple);

// Table of a reducible ambient from the tables of its components: full rank
// entries by the product rule, deficient ones by summing over the missing
// type.
DecompositionTable product_table(const std::vector<const DecompositionTable*>& factors);

// Values fixed by general arguments: the ambient type itself, single
// reflections, all-reflection tuples, corank-one types paired with A1, and
// corank-one forbidden types.
DecompositionTable special_values(const RootSystem& rs);

// All canonical tuples of allowed types of the given total rank.
std::vector<TypeTuple> tuples_of_rank(const std::set<TypeLabel>& allowed, int rank);

}  // namespace ncd
