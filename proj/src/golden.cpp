#include "ncd/golden.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "ncd/errors.hpp"

#ifndef NCD_DATA_DIR
#define NCD_DATA_DIR "data"
#endif

namespace ncd {

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("NCD_DATA_DIR"); env && *env) return env;
  return NCD_DATA_DIR;
}

std::string fnv1a64_hex(const std::vector<std::string>& lines) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  auto feed = [&](unsigned char b) {
    h ^= b;
    h *= 0x100000001b3ull;
  };
  for (const auto& l : lines) {
    for (unsigned char ch : l) feed(ch);
    feed('\n');
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::vector<std::string> read_checked(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DependencyError("cannot open reference file " + path.string());
  std::string line, expected;
  std::vector<std::string> data;
  while (std::getline(in, line)) {
    if (line.rfind("# checksum fnv1a64 ", 0) == 0) {
      expected = line.substr(19);
      continue;
    }
    if (line.empty() || line[0] == '#') continue;
    data.push_back(line);
  }
  if (expected.empty()) throw ConsistencyError("reference file without checksum: " + path.string());
  if (fnv1a64_hex(data) != expected) throw ConsistencyError("checksum mismatch in " + path.string());
  return data;
}

std::vector<ReferenceValue> reference_decomposition_numbers() {
  std::vector<ReferenceValue> out;
  for (const auto& line : read_checked(data_dir() / "decomposition_numbers.txt")) {
    std::istringstream ss(line);
    std::string amb, tup, val;
    if (!(ss >> amb >> tup >> val)) throw ConsistencyError("malformed reference line: " + line);
    out.push_back({TypeLabel::parse(amb), parse_tuple(tup), Integer(val)});
  }
  return out;
}

std::vector<ReferenceValue> reference_decomposition_numbers(const TypeLabel& ambient) {
  std::vector<ReferenceValue> out;
  for (auto& v : reference_decomposition_numbers())
    if (v.ambient == ambient) out.push_back(std::move(v));
  return out;
}

ChiCatalog reference_characteristic_polynomials() {
  ChiCatalog cat;
  for (const auto& line : read_checked(data_dir() / "characteristic_polynomials.txt")) {
    std::istringstream ss(line);
    std::string label;
    ss >> label;
    std::vector<long> coeffs;
    long c;
    while (ss >> c) coeffs.push_back(c);
    auto t = TypeLabel::parse(label);
    if (static_cast<int>(coeffs.size()) != t.rank() + 1) throw ConsistencyError("malformed polynomial for " + label);
    Poly p;
    int deg = t.rank();
    for (long v : coeffs) p.add_term(Rational(v), {0, deg--, 0, 0});
    cat.set(t, p);
  }
  return cat;
}

Poly reference_dual_mtriangle(const std::string& label) {
  std::string name = label == "E7" ? "e7_dual_mtriangle.txt" : label == "E8" ? "e8_dual_mtriangle.txt" : "";
  if (name.empty()) throw InputError("no reference M-triangle for " + label);
  Poly p;
  for (const auto& line : read_checked(data_dir() / name)) {
    std::istringstream ss(line);
    int ex, ey, em;
    std::string coeff;
    if (!(ss >> ex >> ey >> em >> coeff)) throw ConsistencyError("malformed term line: " + line);
    Rational c(coeff);
    c.canonicalize();
    p.add_term(c, {ex, ey, 0, em});
  }
  return p;
}

}  // namespace ncd
