#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace ncd {

struct Component {
  char family;  // 'A', 'D' or 'E'
  int rank;
  auto operator<=>(const Component&) const = default;
};

// A multiset of irreducible ADE components in canonical order (family A < D
// < E, then rank ascending).  The empty label is the type of the identity.
class TypeLabel {
 public:
  TypeLabel() = default;

  // Accepts the synonyms D2 (= A1^2) and D3 (= A3).
  static TypeLabel irreducible(char family, int rank);
  static TypeLabel from_components(std::vector<Component> comps);
  // Grammar: A<k>, D<k>, E<k> joined by '*', repetition as ^<j>; "0" empty.
  static TypeLabel parse(std::string_view text);

  const std::vector<Component>& components() const { return comps_; }
  bool empty() const { return comps_.empty(); }
  bool is_irreducible() const { return comps_.size() == 1; }
  int rank() const;
  std::string str() const;

  // Direct sum.
  TypeLabel operator*(const TypeLabel& o) const;

  // Display order used for canonical tuples: rank descending, fewer
  // components first, then larger components first.
  bool operator<(const TypeLabel& o) const;
  bool operator==(const TypeLabel& o) const { return comps_ == o.comps_; }
  bool operator!=(const TypeLabel& o) const { return comps_ != o.comps_; }

  // Every sub-multiset of the components (including empty and full), each
  // paired with its complement.
  std::vector<std::pair<TypeLabel, TypeLabel>> splittings() const;

 private:
  std::vector<Component> comps_;
};

struct TypeLabelHash {
  std::size_t operator()(const TypeLabel& t) const;
};

// All ADE labels (reducible ones included) of the given rank.
std::vector<TypeLabel> all_types_of_rank(int rank);

// Canonical multiset of nonempty labels: sorted in TypeLabel order.
using TypeTuple = std::vector<TypeLabel>;

TypeTuple canonical(TypeTuple t);
int tuple_rank(const TypeTuple& t);
std::string tuple_str(const TypeTuple& t);
// Comma separated labels, e.g. "D4,A4".
TypeTuple parse_tuple(std::string_view text);
// Number of distinct orderings of the multiset.
unsigned long long orderings(const TypeTuple& t);

struct TypeTupleLess {
  bool operator()(const TypeTuple& a, const TypeTuple& b) const;
};

}  // namespace ncd
