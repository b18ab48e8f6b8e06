#include "ncd/typelabel.hpp"

#include <algorithm>
#include <cctype>
#include <map>

#include "ncd/errors.hpp"

namespace ncd {

namespace {

void check_component(char family, int rank) {
  bool ok = (family == 'A' && rank >= 1) || (family == 'D' && rank >= 4) ||
            (family == 'E' && rank >= 6 && rank <= 8);
  if (!ok) throw InputError(std::string("invalid ADE component ") + family + std::to_string(rank));
}

// Components ordered from "largest" to "smallest" for display comparisons.
std::vector<Component> by_size_desc(const std::vector<Component>& c) {
  std::vector<Component> v = c;
  std::sort(v.begin(), v.end(), [](const Component& a, const Component& b) {
    if (a.rank != b.rank) return a.rank > b.rank;
    return a.family > b.family;
  });
  return v;
}

}  // namespace

TypeLabel TypeLabel::irreducible(char family, int rank) {
  if (family == 'D' && rank == 2) return from_components({{'A', 1}, {'A', 1}});
  if (family == 'D' && rank == 3) return from_components({{'A', 3}});
  check_component(family, rank);
  TypeLabel t;
  t.comps_.push_back({family, rank});
  return t;
}

TypeLabel TypeLabel::from_components(std::vector<Component> comps) {
  TypeLabel t;
  for (const auto& c : comps) {
    if (c.family == 'D' && c.rank == 2) {
      t.comps_.push_back({'A', 1});
      t.comps_.push_back({'A', 1});
    } else if (c.family == 'D' && c.rank == 3) {
      t.comps_.push_back({'A', 3});
    } else {
      check_component(c.family, c.rank);
      t.comps_.push_back(c);
    }
  }
  std::sort(t.comps_.begin(), t.comps_.end());
  return t;
}

TypeLabel TypeLabel::parse(std::string_view text) {
  if (text == "0") return {};
  if (text.empty()) throw InputError("empty type label");
  std::vector<Component> comps;
  std::size_t i = 0;
  auto read_int = [&](const char* what) {
    std::size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
    if (start == i || i - start > 3)
      throw InputError("malformed " + std::string(what) + " in type label '" + std::string(text) + "'");
    return std::stoi(std::string(text.substr(start, i - start)));
  };
  while (true) {
    if (i >= text.size()) throw InputError("truncated type label '" + std::string(text) + "'");
    char f = text[i++];
    if (f != 'A' && f != 'D' && f != 'E')
      throw InputError("unknown family in type label '" + std::string(text) + "'");
    int r = read_int("rank");
    int rep = 1;
    if (i < text.size() && text[i] == '^') {
      ++i;
      rep = read_int("exponent");
      if (rep < 1) throw InputError("zero exponent in type label '" + std::string(text) + "'");
    }
    for (int k = 0; k < rep; ++k) comps.push_back({f, r});
    if (i == text.size()) break;
    if (text[i] != '*') throw InputError("unexpected character in type label '" + std::string(text) + "'");
    ++i;
  }
  return from_components(std::move(comps));
}

int TypeLabel::rank() const {
  int r = 0;
  for (const auto& c : comps_) r += c.rank;
  return r;
}

std::string TypeLabel::str() const {
  if (comps_.empty()) return "0";
  std::string s;
  for (std::size_t i = 0; i < comps_.size();) {
    std::size_t j = i;
    while (j < comps_.size() && comps_[j] == comps_[i]) ++j;
    if (!s.empty()) s += '*';
    s += comps_[i].family;
    s += std::to_string(comps_[i].rank);
    if (j - i > 1) s += "^" + std::to_string(j - i);
    i = j;
  }
  return s;
}

TypeLabel TypeLabel::operator*(const TypeLabel& o) const {
  TypeLabel t;
  t.comps_ = comps_;
  t.comps_.insert(t.comps_.end(), o.comps_.begin(), o.comps_.end());
  std::sort(t.comps_.begin(), t.comps_.end());
  return t;
}

bool TypeLabel::operator<(const TypeLabel& o) const {
  int ra = rank(), rb = o.rank();
  if (ra != rb) return ra > rb;
  if (comps_.size() != o.comps_.size()) return comps_.size() < o.comps_.size();
  auto a = by_size_desc(comps_), b = by_size_desc(o.comps_);
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].rank != b[i].rank) return a[i].rank > b[i].rank;
    if (a[i].family != b[i].family) return a[i].family > b[i].family;
  }
  return false;
}

std::vector<std::pair<TypeLabel, TypeLabel>> TypeLabel::splittings() const {
  // Group equal components and choose a multiplicity for each group.
  std::vector<std::pair<Component, int>> groups;
  for (const auto& c : comps_) {
    if (!groups.empty() && groups.back().first == c)
      ++groups.back().second;
    else
      groups.push_back({c, 1});
  }
  std::vector<std::pair<TypeLabel, TypeLabel>> out;
  std::vector<int> take(groups.size(), 0);
  while (true) {
    TypeLabel left, right;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      for (int k = 0; k < take[g]; ++k) left.comps_.push_back(groups[g].first);
      for (int k = take[g]; k < groups[g].second; ++k) right.comps_.push_back(groups[g].first);
    }
    out.emplace_back(std::move(left), std::move(right));
    std::size_t g = 0;
    while (g < groups.size() && take[g] == groups[g].second) take[g++] = 0;
    if (g == groups.size()) break;
    ++take[g];
  }
  return out;
}

std::size_t TypeLabelHash::operator()(const TypeLabel& t) const {
  std::size_t h = 1469598103934665603ull;
  for (const auto& c : t.components()) {
    h ^= static_cast<std::size_t>(c.family) * 131 + static_cast<std::size_t>(c.rank);
    h *= 1099511628211ull;
  }
  return h;
}

std::vector<TypeLabel> all_types_of_rank(int rank) {
  std::vector<Component> irreducibles;
  for (int k = 1; k <= rank; ++k) {
    irreducibles.push_back({'A', k});
    if (k >= 4) irreducibles.push_back({'D', k});
    if (k >= 6 && k <= 8) irreducibles.push_back({'E', k});
  }
  std::vector<TypeLabel> out;
  std::vector<Component> cur;
  // Nondecreasing index sequences give each multiset once.
  auto rec = [&](auto&& self, std::size_t start, int remaining) -> void {
    if (remaining == 0) {
      out.push_back(TypeLabel::from_components(cur));
      return;
    }
    for (std::size_t i = start; i < irreducibles.size(); ++i) {
      if (irreducibles[i].rank > remaining) continue;
      cur.push_back(irreducibles[i]);
      self(self, i, remaining - irreducibles[i].rank);
      cur.pop_back();
    }
  };
  rec(rec, 0, rank);
  std::sort(out.begin(), out.end());
  return out;
}

TypeTuple canonical(TypeTuple t) {
  std::sort(t.begin(), t.end());
  return t;
}

int tuple_rank(const TypeTuple& t) {
  int r = 0;
  for (const auto& x : t) r += x.rank();
  return r;
}

std::string tuple_str(const TypeTuple& t) {
  std::string s;
  for (const auto& x : t) {
    if (!s.empty()) s += ',';
    s += x.str();
  }
  return s;
}

TypeTuple parse_tuple(std::string_view text) {
  TypeTuple out;
  std::size_t start = 0;
  while (true) {
    std::size_t comma = text.find(',', start);
    std::string_view part = text.substr(start, comma == std::string_view::npos ? text.npos : comma - start);
    TypeLabel t = TypeLabel::parse(part);
    if (t.empty()) throw InputError("tuple entries must be nonempty types");
    out.push_back(std::move(t));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

unsigned long long orderings(const TypeTuple& t) {
  TypeTuple c = canonical(t);
  unsigned long long r = 1;
  std::size_t n = 0;
  for (std::size_t i = 0; i < c.size();) {
    std::size_t j = i;
    while (j < c.size() && c[j] == c[i]) ++j;
    for (std::size_t k = 1; k <= j - i; ++k) {
      ++n;
      r = r * n / k;
    }
    i = j;
  }
  return r;
}

bool TypeTupleLess::operator()(const TypeTuple& a, const TypeTuple& b) const {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

}  // namespace ncd
