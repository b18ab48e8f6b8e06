#include "ncd/exact.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <unordered_map>

namespace ncd {

Integer factorial(int n) {
  Integer r = 1;
  for (int i = 2; i <= n; ++i) r *= i;
  return r;
}

Integer binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  Integer r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n),
               static_cast<unsigned long>(k));
  return r;
}

Poly::Poly(long c) {
  if (c != 0) terms_.emplace(0, Rational(c));
}

Poly::Poly(const Rational& c) {
  if (c != 0) terms_.emplace(0, c).first->second.canonicalize();
}

Poly::Key Poly::pack(const Exponents& e) {
  Key k = 0;
  for (int i = 0; i < kVarCount; ++i) {
    if (e[i] < 0 || e[i] > 255) throw ConsistencyError("exponent out of range");
    k |= static_cast<Key>(e[i]) << (8 * (kVarCount - 1 - i));
  }
  return k;
}

Exponents Poly::unpack(Key k) {
  Exponents e{};
  for (int i = 0; i < kVarCount; ++i) e[i] = (k >> (8 * (kVarCount - 1 - i))) & 0xff;
  return e;
}

Poly Poly::variable(Var v, int power) {
  Exponents e{};
  e[static_cast<int>(v)] = power;
  return monomial(1, e);
}

Poly Poly::monomial(const Rational& c, const Exponents& e) {
  Poly p;
  p.add_term(c, e);
  return p;
}

void Poly::add_term(const Rational& c, const Exponents& e) {
  if (c == 0) return;
  Key k = pack(e);
  auto [it, inserted] = terms_.emplace(k, c);
  if (inserted) {
    it->second.canonicalize();
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Poly& Poly::operator+=(const Poly& o) {
  for (const auto& [k, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(k, c);
    if (!inserted) {
      it->second += c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  for (const auto& [k, c] : o.terms_) {
    auto [it, inserted] = terms_.emplace(k, -c);
    if (!inserted) {
      it->second -= c;
      if (it->second == 0) terms_.erase(it);
    }
  }
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  Poly r;
  if (a.is_zero() || b.is_zero()) return r;
  for (const auto& [ka, ca] : a.terms_) {
    for (const auto& [kb, cb] : b.terms_) {
      // Byte-wise addition is safe while every exponent stays below 256;
      // pack() would have rejected larger inputs, and sums are checked here.
      Exponents ea = Poly::unpack(ka), eb = Poly::unpack(kb), e{};
      for (int i = 0; i < kVarCount; ++i) e[i] = ea[i] + eb[i];
      Poly::Key k = Poly::pack(e);
      Rational c = ca * cb;
      auto [it, inserted] = r.terms_.emplace(k, c);
      if (!inserted) {
        it->second += c;
        if (it->second == 0) r.terms_.erase(it);
      }
    }
  }
  return r;
}

Poly& Poly::operator*=(const Poly& o) {
  *this = *this * o;
  return *this;
}

Poly& Poly::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  Rational cc = c;
  cc.canonicalize();
  for (auto& [k, v] : terms_) v *= cc;
  return *this;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (auto& [k, v] : r.terms_) v = -v;
  return r;
}

bool Poly::operator==(const Poly& o) const { return terms_ == o.terms_; }

Poly Poly::pow(int k) const {
  if (k < 0) throw InputError("negative power");
  Poly result(1), base = *this;
  while (k > 0) {
    if (k & 1) result *= base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return result;
}

int Poly::degree(Var v) const {
  int d = -1;
  for (const auto& [k, c] : terms_) d = std::max(d, unpack(k)[static_cast<int>(v)]);
  return d;
}

Rational Poly::coefficient(const Exponents& e) const {
  auto it = terms_.find(pack(e));
  return it == terms_.end() ? Rational(0) : it->second;
}

Poly Poly::coefficient_of(const std::map<Var, int>& partial) const {
  Poly r;
  for (const auto& [k, c] : terms_) {
    Exponents e = unpack(k);
    bool match = true;
    for (const auto& [v, p] : partial) {
      if (e[static_cast<int>(v)] != p) {
        match = false;
        break;
      }
      e[static_cast<int>(v)] = 0;
    }
    if (match) r.add_term(c, e);
  }
  return r;
}

Poly Poly::substitute(Var v, const Poly& q) const {
  int vi = static_cast<int>(v);
  std::vector<Poly> powers{Poly(1)};
  Poly r;
  for (const auto& [k, c] : terms_) {
    Exponents e = unpack(k);
    int p = e[vi];
    e[vi] = 0;
    while (static_cast<int>(powers.size()) <= p) powers.push_back(powers.back() * q);
    r += monomial(c, e) * powers[p];
  }
  return r;
}

Poly Poly::substitute_point(Var v, const Rational& value) const {
  int vi = static_cast<int>(v);
  Poly r;
  for (const auto& [k, c] : terms_) {
    Exponents e = unpack(k);
    Rational f = c;
    for (int i = 0; i < e[vi]; ++i) f *= value;
    e[vi] = 0;
    r.add_term(f, e);
  }
  return r;
}

Rational Poly::evaluate(const std::array<Rational, kVarCount>& point) const {
  Rational s = 0;
  for (const auto& [k, c] : terms_) {
    Exponents e = unpack(k);
    Rational t = c;
    for (int i = 0; i < kVarCount; ++i)
      for (int j = 0; j < e[i]; ++j) t *= point[i];
    s += t;
  }
  return s;
}

std::string Poly::str() const {
  if (terms_.empty()) return "0";
  // Printing order of variable names inside a monomial.
  static constexpr std::array<std::pair<int, char>, kVarCount> kNames{
      {{3, 'm'}, {0, 'x'}, {1, 'y'}, {2, 'z'}}};
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, c] : terms_) {
    Exponents e = unpack(k);
    Rational a = abs(c);
    if (first) {
      if (c < 0) os << '-';
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    std::vector<std::string> parts;
    bool constant = (k == 0);
    if (a != 1 || constant) parts.push_back(a.get_str());
    for (const auto& [idx, name] : kNames) {
      if (e[idx] == 0) continue;
      std::string s(1, name);
      if (e[idx] > 1) s += "^" + std::to_string(e[idx]);
      parts.push_back(s);
    }
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (i) os << '*';
      os << parts[i];
    }
  }
  return os.str();
}

DivisionResult divide(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw InputError("division by the zero polynomial");
  DivisionResult r;
  Poly p = a;
  const auto& [lk, lc] = *b.terms().begin();
  Exponents le = Poly::unpack(lk);
  while (!p.is_zero()) {
    const auto& [pk, pc] = *p.terms().begin();
    Exponents pe = Poly::unpack(pk);
    bool divisible = true;
    Exponents q{};
    for (int i = 0; i < kVarCount; ++i) {
      q[i] = pe[i] - le[i];
      if (q[i] < 0) divisible = false;
    }
    if (divisible) {
      Poly t = Poly::monomial(pc / lc, q);
      r.quotient += t;
      p -= t * b;
    } else {
      Poly t = Poly::monomial(pc, pe);
      r.remainder += t;
      p -= t;
    }
  }
  return r;
}

Poly binomial_poly(int d) {
  if (d < 0) throw InputError("negative binomial index");
  Poly r(1);
  Poly m = Poly::variable(Var::m);
  for (int i = 0; i < d; ++i) r *= m - Poly(i);
  r *= Rational(1, 1) / Rational(factorial(d));
  return r;
}

SubstitutionResult substitute_rational(
    const Poly& p, const std::map<Var, RationalSubstitution>& subs,
    const Poly& multiplier) {
  struct Cached {
    int var;
    int clearing;
    std::vector<Poly> num_pow, den_pow;
  };
  std::vector<Cached> cache;
  for (const auto& [v, s] : subs) {
    int vi = static_cast<int>(v);
    int d = std::max(0, p.degree(v));
    int clear = s.clearing_power < 0 ? d : s.clearing_power;
    if (clear < d) throw InputError("clearing power below the degree");
    Cached c{vi, clear, {Poly(1)}, {Poly(1)}};
    for (int i = 0; i < clear; ++i) {
      c.num_pow.push_back(c.num_pow.back() * s.numerator);
      c.den_pow.push_back(c.den_pow.back() * s.denominator);
    }
    cache.push_back(std::move(c));
  }
  Poly numerator;
  for (const auto& [k, coef] : p.terms()) {
    Exponents e = Poly::unpack(k);
    Poly t(1);
    for (const auto& c : cache) {
      int ev = e[c.var];
      t *= c.num_pow[ev] * c.den_pow[c.clearing - ev];
      e[c.var] = 0;
    }
    numerator += t * Poly::monomial(coef, e);
  }
  Poly denominator(1);
  for (const auto& c : cache) denominator *= c.den_pow[c.clearing];
  DivisionResult d = divide(multiplier * numerator, denominator);
  SubstitutionResult out;
  out.exact = d.remainder.is_zero();
  out.value = std::move(d.quotient);
  out.remainder = std::move(d.remainder);
  return out;
}

int LinearSystem::variable_index(const std::string& name) const {
  auto it = std::find(variables.begin(), variables.end(), name);
  return it == variables.end() ? -1 : static_cast<int>(it - variables.begin());
}

Rational row_value(const LinearRow& row, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [j, c] : row.coefficients) s += c * x.at(j);
  return s;
}

namespace {

using IntRow = std::vector<Integer>;

// Clears denominators and divides by the content; the sign makes the first
// nonzero entry positive, so that duplicate equations compare equal.
IntRow normalize(const LinearRow& row, std::size_t n) {
  Integer l = 1;
  for (const auto& [j, c] : row.coefficients) {
    Integer d = c.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  {
    Integer d = row.rhs.get_den();
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), d.get_mpz_t());
  }
  std::vector<Rational> dense(n + 1, Rational(0));
  for (const auto& [j, c] : row.coefficients) dense.at(j) += c;
  dense[n] = row.rhs;
  IntRow out(n + 1);
  Integer g = 0;
  for (std::size_t j = 0; j <= n; ++j) {
    Rational v = dense[j] * l;
    out[j] = v.get_num();
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), out[j].get_mpz_t());
  }
  if (g == 0) return out;
  int sign = 0;
  for (std::size_t j = 0; j <= n && sign == 0; ++j) sign = sgn(out[j]);
  if (sign < 0) g = -g;
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return out;
}

struct RowHash {
  std::size_t operator()(const IntRow& r) const {
    std::size_t h = 1469598103934665603ull;
    for (const auto& v : r) {
      h ^= static_cast<std::size_t>(mpz_get_si(v.get_mpz_t()));
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace

namespace {

constexpr std::uint64_t kPrime = (1ull << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  unsigned __int128 p = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(p & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(p >> 61);
  std::uint64_t s = lo + hi;
  return s >= kPrime ? s - kPrime : s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (; e; e >>= 1, a = mulmod(a, a))
    if (e & 1) r = mulmod(r, a);
  return r;
}

std::uint64_t reduce_mod(const Integer& v) {
  return mpz_fdiv_ui(v.get_mpz_t(), kPrime);
}

// Rows (by index) that are linearly independent modulo a large prime, in
// input order.  Independence mod p implies independence over Q.
std::vector<std::size_t> independent_rows_mod_p(const std::vector<IntRow>& a, std::size_t width) {
  std::vector<std::vector<std::uint64_t>> basis(width);
  std::vector<std::size_t> chosen;
  std::vector<std::uint64_t> row(width);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) row[j] = a[i][j] == 0 ? 0 : reduce_mod(a[i][j]);
    for (std::size_t c = 0; c < width; ++c) {
      if (row[c] == 0) continue;
      if (basis[c].empty()) {
        std::uint64_t inv = powmod(row[c], kPrime - 2);
        for (std::size_t j = c; j < width; ++j) row[j] = mulmod(row[j], inv);
        basis[c] = row;
        chosen.push_back(i);
        break;
      }
      const auto& b = basis[c];
      std::uint64_t f = kPrime - row[c];
      for (std::size_t j = c; j < width; ++j)
        if (b[j]) row[j] = (row[j] + mulmod(f, b[j])) % kPrime;
    }
  }
  return chosen;
}

// Fraction-free elimination of the given rows.  Throws on inconsistency.
SolutionSpace eliminate(const LinearSystem& system, std::vector<IntRow> a, std::vector<std::size_t> origin) {
  const std::size_t n = system.variables.size();
  SolutionSpace out;
  const std::size_t rows = a.size();
  std::size_t r = 0;
  Integer prev = 1, t1, t2;
  for (std::size_t col = 0; col < n && r < rows; ++col) {
    std::size_t p = r;
    while (p < rows && a[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[r]);
    std::swap(origin[p], origin[r]);
    out.pivot_columns.push_back(static_cast<int>(col));
    const Integer& piv = a[r][col];
    for (std::size_t i = r + 1; i < rows; ++i) {
      IntRow& row = a[i];
      const Integer f = row[col];
      for (std::size_t j = col + 1; j <= n; ++j) {
        if (f == 0 && row[j] == 0) continue;
        mpz_mul(t1.get_mpz_t(), piv.get_mpz_t(), row[j].get_mpz_t());
        mpz_mul(t2.get_mpz_t(), f.get_mpz_t(), a[r][j].get_mpz_t());
        mpz_sub(t1.get_mpz_t(), t1.get_mpz_t(), t2.get_mpz_t());
        mpz_divexact(row[j].get_mpz_t(), t1.get_mpz_t(), prev.get_mpz_t());
      }
      row[col] = 0;
    }
    prev = piv;
    ++r;
  }
  out.rank = static_cast<int>(r);
  for (std::size_t i = r; i < rows; ++i) {
    if (a[i][n] != 0) {
      // The offending equation together with the pivot equations that
      // eliminated its variables.
      const LinearRow& bad = system.rows[origin[i]];
      std::vector<std::string> prov{bad.provenance};
      for (std::size_t k = 0; k < r; ++k) {
        int pc = out.pivot_columns[k];
        bool touches = std::any_of(bad.coefficients.begin(), bad.coefficients.end(),
                                   [&](const auto& e) { return e.first == pc && e.second != 0; });
        if (touches) prov.push_back(system.rows[origin[k]].provenance);
      }
      throw InconsistentSystem("inconsistent linear system at row '" +
                                   system.rows[origin[i]].provenance + "'",
                               std::move(prov));
    }
  }
  std::vector<bool> is_pivot(n, false);
  for (int c : out.pivot_columns) is_pivot[c] = true;
  for (std::size_t j = 0; j < n; ++j)
    if (!is_pivot[j]) out.free_columns.push_back(static_cast<int>(j));
  out.dimension = static_cast<int>(out.free_columns.size());

  auto back_substitute = [&](std::vector<Rational> x, bool homogeneous) {
    for (std::size_t k = r; k-- > 0;) {
      int pc = out.pivot_columns[k];
      Rational s = homogeneous ? Rational(0) : Rational(a[k][n]);
      for (std::size_t j = pc + 1; j < n; ++j) {
        if (a[k][j] != 0 && x[j] != 0) s -= Rational(a[k][j]) * x[j];
      }
      x[pc] = s / Rational(a[k][pc]);
    }
    return x;
  };
  out.particular = back_substitute(std::vector<Rational>(n, Rational(0)), false);
  for (int f : out.free_columns) {
    std::vector<Rational> x(n, Rational(0));
    x[f] = 1;
    out.nullspace.push_back(back_substitute(std::move(x), true));
  }
  return out;
}

Integer dot(const IntRow& row, const std::vector<Rational>& x, std::size_t n, Integer& den) {
  // Returns the numerator of row . x over the common denominator den.
  den = 1;
  for (std::size_t j = 0; j < n; ++j)
    if (row[j] != 0) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x[j].get_den_mpz_t());
  Integer s = 0;
  for (std::size_t j = 0; j < n; ++j)
    if (row[j] != 0 && x[j] != 0) s += row[j] * x[j].get_num() * (den / x[j].get_den());
  return s;
}

}  // namespace

SolutionSpace solve(const LinearSystem& system) {
  const std::size_t n = system.variables.size();
  if (system.rows.empty()) throw InputError("empty linear system");
  std::vector<IntRow> a;
  std::vector<std::size_t> origin;
  std::unordered_map<IntRow, std::size_t, RowHash> seen;
  for (std::size_t i = 0; i < system.rows.size(); ++i) {
    IntRow r = normalize(system.rows[i], n);
    bool zero = std::all_of(r.begin(), r.end(), [](const Integer& v) { return v == 0; });
    if (zero) continue;
    if (seen.emplace(r, i).second) {
      a.push_back(std::move(r));
      origin.push_back(i);
    }
  }
  // Tall systems: eliminate only a modular row basis, then confirm every
  // remaining row exactly against the solution space.
  std::vector<std::size_t> selected;
  if (a.size() > 2 * (n + 1)) {
    selected = independent_rows_mod_p(a, n + 1);
  } else {
    selected.resize(a.size());
    std::iota(selected.begin(), selected.end(), 0);
  }
  std::vector<char> used(a.size(), 0);
  for (;;) {
    std::vector<IntRow> sub;
    std::vector<std::size_t> sub_origin;
    for (std::size_t i : selected) {
      used[i] = 1;
      sub.push_back(a[i]);
      sub_origin.push_back(origin[i]);
    }
    SolutionSpace out = eliminate(system, std::move(sub), std::move(sub_origin));
    out.distinct_rows = static_cast<int>(a.size());
    std::vector<std::size_t> missed;
    Integer den;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (used[i]) continue;
      bool ok = dot(a[i], out.particular, n, den) == a[i][n] * den;
      for (const auto& v : out.nullspace) {
        if (!ok) break;
        ok = dot(a[i], v, n, den) == 0;
      }
      if (!ok) missed.push_back(i);
    }
    if (missed.empty()) return out;
    selected.insert(selected.end(), missed.begin(), missed.end());
    std::sort(selected.begin(), selected.end());
  }
}

}  // namespace ncd
