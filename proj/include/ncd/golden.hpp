#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "ncd/exact.hpp"
#include "ncd/ncposet.hpp"
#include "ncd/typelabel.hpp"

namespace ncd {

// NCD_DATA_DIR from the environment, else the directory fixed at build time.
std::filesystem::path data_dir();

// Data lines of a reference file after verifying its checksum header.
std::vector<std::string> read_checked(const std::filesystem::path& path);
std::string fnv1a64_hex(const std::vector<std::string>& lines);

struct ReferenceValue {
  TypeLabel ambient;
  TypeTuple tuple;
  Integer value;
};

std::vector<ReferenceValue> reference_decomposition_numbers();
std::vector<ReferenceValue> reference_decomposition_numbers(const TypeLabel& ambient);
ChiCatalog reference_characteristic_polynomials();
// Dual M-triangle in x, y, m for "E7" or "E8".
Poly reference_dual_mtriangle(const std::string& label);

}  // namespace ncd
