#pragma once

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "ncd/errors.hpp"

namespace ncd {

using Integer = mpz_class;
using Rational = mpq_class;

// The polynomial ring is fixed to Q[x, y, z, m].
enum class Var : int { x = 0, y = 1, z = 2, m = 3 };
inline constexpr int kVarCount = 4;
using Exponents = std::array<int, kVarCount>;

Integer factorial(int n);
Integer binomial(int n, int k);

class Poly {
 public:
  // Exponents packed one byte per variable, x in the top byte, so that the
  // descending key order is lexicographic in (x, y, z, m).
  using Key = std::uint32_t;
  using TermMap = std::map<Key, Rational, std::greater<Key>>;

  Poly() = default;
  Poly(long c);  // NOLINT(google-explicit-constructor)
  Poly(const Rational& c);  // NOLINT(google-explicit-constructor)

  static Poly variable(Var v, int power = 1);
  static Poly monomial(const Rational& c, const Exponents& e);
  static Key pack(const Exponents& e);
  static Exponents unpack(Key k);

  bool is_zero() const { return terms_.empty(); }
  const TermMap& terms() const { return terms_; }
  std::size_t term_count() const { return terms_.size(); }

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(const Poly& o);
  Poly& operator*=(const Rational& c);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(const Poly& a, const Poly& b);
  friend Poly operator*(Poly a, const Rational& c) { return a *= c; }
  Poly operator-() const;
  bool operator==(const Poly& o) const;

  Poly pow(int k) const;
  void add_term(const Rational& c, const Exponents& e);

  int degree(Var v) const;
  Rational coefficient(const Exponents& e) const;
  // Coefficient of the monomial prod_v v^{e_v} over the listed variables, as
  // a polynomial in the remaining ones.
  Poly coefficient_of(const std::map<Var, int>& partial) const;

  Poly substitute(Var v, const Poly& q) const;
  Poly substitute_point(Var v, const Rational& r) const;
  Rational evaluate(const std::array<Rational, kVarCount>& point) const;

  // Sorted monomials, explicit '*' and '^', coefficients as p/q.
  std::string str() const;

 private:
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.str(); }

struct DivisionResult {
  Poly quotient;
  Poly remainder;
};

// Multivariate division in the lex order of Poly::Key.
DivisionResult divide(const Poly& a, const Poly& b);

// m(m-1)...(m-d+1)/d! as a polynomial in m.
Poly binomial_poly(int d);

struct RationalSubstitution {
  Poly numerator;
  Poly denominator;
  int clearing_power = -1;  // -1: use the degree of p in the variable
};

struct SubstitutionResult {
  Poly value;
  Poly remainder;
  bool exact = false;
};

// multiplier * p(v -> num_v/den_v) computed as an exact quotient of the
// cleared numerator by prod den_v^{D_v}.  A nonzero remainder means the
// result is not a polynomial.
SubstitutionResult substitute_rational(
    const Poly& p, const std::map<Var, RationalSubstitution>& subs,
    const Poly& multiplier);

struct LinearRow {
  std::vector<std::pair<int, Rational>> coefficients;
  Rational rhs;
  std::string provenance;
};

struct LinearSystem {
  std::vector<std::string> variables;
  std::vector<LinearRow> rows;

  int variable_index(const std::string& name) const;
};

struct SolutionSpace {
  std::vector<Rational> particular;
  std::vector<std::vector<Rational>> nullspace;
  std::vector<int> pivot_columns;
  std::vector<int> free_columns;
  int dimension = 0;
  int rank = 0;
  int distinct_rows = 0;
};

struct InconsistentSystem : ConsistencyError {
  InconsistentSystem(const std::string& what, std::vector<std::string> rows)
      : ConsistencyError(what), provenances(std::move(rows)) {}
  std::vector<std::string> provenances;
};

// Fraction-free elimination; pivots are chosen by variable order first and
// row order second, so the free variables are reproducible.
SolutionSpace solve(const LinearSystem& system);

Rational row_value(const LinearRow& row, const std::vector<Rational>& x);

}  // namespace ncd
