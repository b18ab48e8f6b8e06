#pragma once

#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ncd/decomp.hpp"
#include "ncd/linsys.hpp"
#include "ncd/ncposet.hpp"
#include "ncd/triangles.hpp"

namespace ncd {

struct Check {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;

  void add(std::string check_name, bool pass, std::string detail = {});
  void append(const SuiteReport& other);
  int passed() const;
  int failed() const;
  bool ok() const { return failed() == 0 && !checks.empty(); }
};

// Shared, memoized computations for one run: NC posets (through the cache
// directory when given), brute-force tables, and characteristic polynomials
// computed without the reference data.
class Workspace {
 public:
  explicit Workspace(int threads = 1, std::optional<std::filesystem::path> cache_dir = std::nullopt);

  int threads() const { return threads_; }
  const NcPoset& nc(const TypeLabel& t);
  const DecompositionTable& table(const TypeLabel& t);
  TableCatalog& catalog() { return catalog_; }

  // Direct path up to rank 6, recursion through full rank pairs above.
  Poly chi(const TypeLabel& irreducible);
  // Catalog holding every irreducible component of the sub-diagram types
  // of t and t itself.
  ChiCatalog chi_catalog(const TypeLabel& t);
  const MTriangle& triangle(const TypeLabel& t);
  const ReplayReport& replay_report(const TypeLabel& t);

 private:
  int threads_;
  std::optional<std::filesystem::path> cache_dir_;
  TableCatalog catalog_;
  std::map<TypeLabel, std::unique_ptr<NcPoset>> nc_;
  std::map<TypeLabel, Poly> chi_;
  std::map<TypeLabel, MTriangle> triangles_;
  std::map<TypeLabel, ReplayReport> replays_;
};

std::vector<TypeLabel> labels(const std::vector<std::string>& names);

// Reference decomposition numbers of each ambient against brute force.
SuiteReport verify_reference_numbers(Workspace& ws, const std::vector<TypeLabel>& ambients);
// Type A closed form against brute force on every tuple of A-type labels.
SuiteReport verify_type_a(Workspace& ws, int max_rank);
// Direct (rank <= 6) and recursive characteristic polynomials against the
// reference list.
SuiteReport verify_characteristic(Workspace& ws);
// Multichain counts against the product formula, for NC and NC^m.
SuiteReport verify_zeta(Workspace& ws);
SuiteReport verify_zeta_identity(Workspace& ws, const std::vector<TypeLabel>& ambients);
// Assembled triangles against the Moebius function of NC^m.
SuiteReport verify_mtriangle_oracle(Workspace& ws);
SuiteReport verify_reference_triangle(Workspace& ws, const TypeLabel& ambient);
// Brute-force counts of listed (tuple, value) pairs.
SuiteReport verify_counts(Workspace& ws, const TypeLabel& ambient,
                          const std::vector<std::pair<std::string, long>>& expected);
SuiteReport verify_linsys(Workspace& ws, const std::vector<TypeLabel>& ambients);
// Orbit sizes of reflections under conjugation by c and the case rule in
// terms of type(t c).
SuiteReport verify_orbits(const std::vector<TypeLabel>& ambients);
SuiteReport verify_orbit_multisets();
SuiteReport verify_reciprocity(Workspace& ws, const std::vector<TypeLabel>& ambients);
SuiteReport verify_f_transform(Workspace& ws, const std::vector<TypeLabel>& ambients, int max_m);
SuiteReport verify_f_reciprocity(Workspace& ws, const std::vector<TypeLabel>& ambients, int max_m);
// Fixed-space codimension against breadth-first reflection length.
SuiteReport verify_absolute_length(const std::vector<TypeLabel>& ambients);

// Ambients of the reference tables covered by default and by the extended
// run.
std::vector<TypeLabel> reference_ambients(bool extended);

}  // namespace ncd
