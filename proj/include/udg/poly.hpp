#pragma once

#include "udg/rational.hpp"

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace udg {

// Power product over variable indices. Exponents are stored densely with
// trailing zeros trimmed, so equal monomials compare equal regardless of
// how many variables the surrounding table has.
class Monomial {
 public:
  Monomial() = default;
  static Monomial one() { return {}; }
  static Monomial var(int index, uint32_t exp = 1);

  uint32_t exp(int index) const;
  int max_var() const { return static_cast<int>(e_.size()) - 1; }
  int total_degree() const;
  bool is_one() const { return e_.empty(); }

  bool divides(const Monomial& m) const;
  Monomial operator*(const Monomial& m) const;
  // Requires m.divides(*this).
  Monomial div(const Monomial& m) const;
  static Monomial lcm(const Monomial& a, const Monomial& b);

  // Container order only (plain exponent-vector lexicographic); term orders
  // live in MonomialOrder.
  std::strong_ordering operator<=>(const Monomial& m) const;
  bool operator==(const Monomial& m) const { return e_ == m.e_; }

 private:
  void trim();
  std::vector<uint32_t> e_;
};

// Sparse polynomial with exact rational coefficients. The canonical form
// never stores zero coefficients; the empty term map is the zero polynomial.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial zero() { return {}; }
  static Polynomial constant(Rational c);
  static Polynomial variable(int index);
  static Polynomial term(Monomial m, Rational c);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  size_t term_count() const { return terms_.size(); }
  int total_degree() const;  // -1 for the zero polynomial
  const std::map<Monomial, Rational>& terms() const { return terms_; }
  int max_var() const;

  Polynomial operator+(const Polynomial& p) const;
  Polynomial operator-(const Polynomial& p) const;
  Polynomial operator*(const Polynomial& p) const;
  Polynomial operator-() const;
  Polynomial scaled(const Rational& c) const;
  Polynomial mul_term(const Monomial& m, const Rational& c) const;
  bool operator==(const Polynomial& p) const { return terms_ == p.terms_; }

  void add_term(const Monomial& m, const Rational& c);

  // Exact substitution of a subset of variables; entries without a value
  // are left symbolic.
  Polynomial substituted(const std::vector<std::pair<int, Rational>>& values) const;

  double eval(std::span<const double> point) const;

 private:
  std::map<Monomial, Rational> terms_;
};

struct VarInfo {
  std::string name;
  int vertex = -1;   // graph vertex index, -1 for auxiliary variables
  char axis = 0;     // 'x' or 'y' for coordinate variables
  bool aux = false;
  std::string note;  // purpose tag for auxiliary variables
};

struct VarTable {
  std::vector<VarInfo> vars;
  int size() const { return static_cast<int>(vars.size()); }
  int index_of(std::string_view name) const;
  int add(VarInfo info);  // rejects duplicate names
};

// Total multiplicative monomial order. prec[k] is the variable index with
// significance rank k (rank 0 = most significant).
struct MonomialOrder {
  enum class Kind { Lex, Grevlex };
  Kind kind = Kind::Lex;
  std::vector<int> prec;

  static MonomialOrder lex(int nvars);
  static MonomialOrder grevlex(int nvars);
  static MonomialOrder with_precedence(Kind kind, std::vector<int> prec);

  int nvars() const { return static_cast<int>(prec.size()); }
  // -1, 0, +1 for a < b, a == b, a > b.
  int compare(const Monomial& a, const Monomial& b) const;
  bool less(const Monomial& a, const Monomial& b) const { return compare(a, b) < 0; }
};

// Display format: integer-cleared primitive form, terms sorted descending
// under `order` (natural-precedence lex when order is null), e.g.
// "4*y3^2 - 3". Round-trips through parse_polynomial.
std::string poly_to_string(const Polynomial& p, const VarTable& vars,
                           const MonomialOrder* order = nullptr);

class PolyParseError : public std::runtime_error {
 public:
  PolyParseError(const std::string& msg, size_t position)
      : std::runtime_error(msg), position(position) {}
  size_t position;
};

// Parses sums of rational-coefficient terms ("4*y3^2 - 3*y3"); an optional
// "lhs = rhs" equation is folded to lhs - rhs. Unknown names are an error
// unless autoRegister is set, in which case they are appended to `vars`.
Polynomial parse_polynomial(std::string_view text, const VarTable& vars);
Polynomial parse_polynomial(std::string_view text, VarTable& vars, bool autoRegister);

}  // namespace udg
