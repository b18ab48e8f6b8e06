#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ncd/decomp.hpp"
#include "ncd/exact.hpp"
#include "ncd/rootsystem.hpp"

namespace ncd {

// Decomposition tables of smaller root systems.  Irreducible types are
// counted by brute force on demand (optionally through the NC cache),
// reducible ones are built with the product rule.
class TableCatalog {
 public:
  explicit TableCatalog(int threads = 1, std::optional<std::filesystem::path> cache_dir = std::nullopt);

  void add(DecompositionTable table);
  bool has(const TypeLabel& t) const { return tables_.count(t) > 0; }
  const DecompositionTable& get(const TypeLabel& t);

 private:
  int threads_;
  std::optional<std::filesystem::path> cache_dir_;
  std::map<TypeLabel, DecompositionTable> tables_;
};

// Full rank tuples holding a non-sub-diagram type that are set to zero
// explicitly (E6, D7, E7 and E8).  Their types join the unknowns' universe
// together with every corank-one type.
std::vector<TypeTuple> listed_zero_tuples(const TypeLabel& ambient);

struct LinsysOptions {
  // Also set to zero every tuple holding a non-sub-diagram type, not only
  // the listed ones.  Off by default.
  bool zero_all_forbidden = false;
  int threads = 1;
};

struct GeneratedSystem {
  TypeLabel ambient;
  std::set<TypeLabel> universe;      // types allowed in unknowns
  std::vector<TypeTuple> unknowns;   // full rank canonical tuples
  std::map<TypeTuple, int, TypeTupleLess> index;
  LinearSystem system;
  std::map<std::string, int> family_rows;  // rows generated per family

  int variable(const TypeTuple& t) const;
};

// Equation families: chain relations through smaller tables (a tuple
// refined by a tuple of a smaller ambient, e >= 1, d >= 1), coefficient comparison of the multichain identity in
// m^i z^j, fixed special values, and zero assignments.
GeneratedSystem generate_equations(const RootSystem& rs, TableCatalog& lower, const LinsysOptions& opt = {});

// Full-rank-and-deficient value vector of a brute-force table on the
// unknowns of a generated system.
std::vector<Rational> oracle_vector(const GeneratedSystem& g, const DecompositionTable& brute);

struct Assertion {
  std::string description;
  bool pass = false;
  std::string detail;
};

struct ReplayReport {
  TypeLabel ambient;
  int equation_count = 0;
  int distinct_equations = 0;
  int variable_count = 0;
  int rank = 0;
  int dimension = 0;
  std::optional<int> expected_dimension;
  bool dimension_relaxed = false;
  std::map<std::string, int> family_rows;
  std::vector<std::pair<TypeTuple, Integer>> pins;
  std::vector<Assertion> assertions;
  DecompositionTable final_table;

  bool passed() const;
};

// Expected dimension of the solution space, when known (E6 1, D6 2, D7 2, E7 2, E8 4, and 0 for the types solved uniquely).
std::optional<int> expected_dimension(const TypeLabel& ambient);

// Generates, solves, pins the free directions with brute-force values and
// checks the result, including the listed reference values of the ambient.
// `brute` must be the brute-force table of the ambient.
ReplayReport replay(const RootSystem& rs, TableCatalog& lower, const DecompositionTable& brute,
                    const LinsysOptions& opt = {});

// Structured report: counts, pins, assertions and the full rank table.
std::string report_json(const ReplayReport& r);

}  // namespace ncd
