#pragma once

// Sparse multivariate polynomials, binary forms in (U, V), and homogeneous
// Laurent forms in (U, V).

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "vfree/field.hpp"
#include "vfree/linalg.hpp"

namespace vfree {

inline constexpr unsigned kMaxVars = 12;
using Monomial = std::array<std::uint16_t, kMaxVars>;

unsigned monomial_degree(const Monomial& m);
// Degree reverse lexicographic order, X0 > X1 > ...: true when a > b.
bool degrevlex_greater(const Monomial& a, const Monomial& b);
bool divides(const Monomial& a, const Monomial& b);
Monomial lcm(const Monomial& a, const Monomial& b);

struct Term {
  Monomial mono;
  Scalar coeff;
};

class MultiPoly {
 public:
  MultiPoly(const Field& f, unsigned nvars);
  static MultiPoly variable(const Field& f, unsigned nvars, unsigned i);
  static MultiPoly constant(const Scalar& c, unsigned nvars);
  static MultiPoly monomial(const Scalar& c, unsigned nvars, const Monomial& m);

  const Field& field() const { return *field_; }
  unsigned nvars() const { return n_; }
  // Terms sorted by decreasing degrevlex order; no zero coefficients.
  const std::vector<Term>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  std::size_t size() const { return t_.size(); }
  int total_degree() const;  // -1 for zero
  bool is_homogeneous() const;
  Scalar coeff(const Monomial& m) const;
  const Term& leading() const { return t_.front(); }

  MultiPoly operator-() const;
  friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
  friend MultiPoly operator*(const MultiPoly& a, const Scalar& s);
  friend MultiPoly operator*(const Scalar& s, const MultiPoly& a) { return a * s; }
  friend bool operator==(const MultiPoly& a, const MultiPoly& b);
  MultiPoly& operator+=(const MultiPoly& o) { return *this = *this + o; }
  MultiPoly& operator-=(const MultiPoly& o) { return *this = *this - o; }
  MultiPoly mul_term(const Scalar& c, const Monomial& m) const;
  MultiPoly pow(unsigned e) const;
  MultiPoly monic() const;

  Scalar eval(const std::vector<Scalar>& x) const;
  MultiPoly embed(const Field& target) const;
  // Set X_i = value, keeping nvars.
  MultiPoly specialize(unsigned i, const Scalar& value) const;
  // Homogeneous part of the given degree.
  MultiPoly homogeneous_part(unsigned d) const;

  // Variables print as X0, X1, ...; with names = "UV" and nvars = 2 they print as U, V.
  std::string to_string(std::string_view names = "") const;

 private:
  friend class MultiPolyBuilder;
  const Field* field_;
  unsigned n_;
  std::vector<Term> t_;
};

// Accumulates terms in any order, then produces a normalized MultiPoly.
class MultiPolyBuilder {
 public:
  MultiPolyBuilder(const Field& f, unsigned nvars) : field_(&f), n_(nvars) {}
  void add(const Monomial& m, const Scalar& c);
  MultiPoly build();

 private:
  struct Greater {
    bool operator()(const Monomial& a, const Monomial& b) const { return degrevlex_greater(a, b); }
  };
  const Field* field_;
  unsigned n_;
  std::map<Monomial, Scalar, Greater> acc_;
};

// Grammar: expr := ['+'|'-'] term (('+'|'-') term)* ; term := factor ('*' factor)* ;
// factor := atom ('^' nat)? ; atom := nat | nat '/' nat | var | 'g' | '(' expr ')' ;
// var := 'X' digit+ | 'U' | 'V'. U and V denote variables 0 and 1.
MultiPoly parse_poly(std::string_view text, unsigned nvars, const Field& field,
                     bool require_homogeneous = true);

MultiPoly partial_derivative(const MultiPoly& f, unsigned i);
std::vector<MultiPoly> gradient(const MultiPoly& f);
// f(images[0], ..., images[n-1]); images share a field and a variable count.
MultiPoly substitute(const MultiPoly& f, const std::vector<MultiPoly>& images);
// f(M X): X_i -> sum_j M(i, j) X_j. M must be invertible.
MultiPoly linear_substitute(const MultiPoly& f, const Matrix& m);

class BinaryForm {
 public:
  BinaryForm(const Field& f, int degree);  // zero form of that degree
  BinaryForm(const Field& f, std::vector<Scalar> coeffs);  // coeffs[j] multiplies U^{d-j} V^j
  static BinaryForm monomial(const Scalar& c, int u_exp, int v_exp);
  static BinaryForm from_multipoly(const MultiPoly& p, int degree);

  const Field& field() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return c_; }
  const Scalar& coeff(int j) const { return c_[static_cast<std::size_t>(j)]; }
  bool is_zero() const;

  BinaryForm operator-() const;
  friend BinaryForm operator+(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator-(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(const BinaryForm& a, const BinaryForm& b);
  friend BinaryForm operator*(const BinaryForm& a, const Scalar& s);
  friend bool operator==(const BinaryForm& a, const BinaryForm& b);

  Scalar eval(const Scalar& u, const Scalar& v) const;
  BinaryForm embed(const Field& target) const;
  // Substitute (U, V) -> (a U + b V, c U + d V).
  BinaryForm reparametrize(const Scalar& a, const Scalar& b, const Scalar& c, const Scalar& d) const;
  MultiPoly to_multipoly() const;
  // Exact quotient a / b when b divides a.
  std::optional<BinaryForm> exact_div(const BinaryForm& b) const;
  // Number of leading zero coefficients = exponent of V dividing the form.
  int v_valuation() const;
  std::string to_string() const;

 private:
  const Field* field_;
  std::vector<Scalar> c_;
};

BinaryForm parse_binary_form(std::string_view text, const Field& field);
Scalar resultant_bin(const BinaryForm& q, const BinaryForm& c);
// Normalized so the first nonzero coefficient is 1; gcd(f, 0) = f normalized.
BinaryForm gcd_bin(const BinaryForm& a, const BinaryForm& b);
BinaryForm compose_with_curve(const MultiPoly& f, const std::vector<BinaryForm>& h);

// Sum of c_{ij} U^i V^j over (i, j) in Z^2 with i + j fixed.
class LaurentForm {
 public:
  LaurentForm(const Field& f, int total_degree);
  static LaurentForm from_binary(const BinaryForm& b);
  static LaurentForm monomial(const Scalar& c, int u_exp, int v_exp);

  const Field& field() const { return *field_; }
  int total_degree() const { return deg_; }
  const std::map<int, Scalar>& terms() const { return t_; }  // keyed by U exponent
  bool is_zero() const { return t_.empty(); }

  LaurentForm operator-() const;
  friend LaurentForm operator+(const LaurentForm& a, const LaurentForm& b);
  friend LaurentForm operator-(const LaurentForm& a, const LaurentForm& b);
  friend LaurentForm operator*(const LaurentForm& a, const LaurentForm& b);
  friend LaurentForm operator*(const LaurentForm& a, const Scalar& s);
  friend bool operator==(const LaurentForm& a, const LaurentForm& b);

  // Exact quotient by a nonzero binary form, when it exists.
  std::optional<LaurentForm> divide(const BinaryForm& b) const;
  // The form as a BinaryForm when all exponents are nonnegative.
  std::optional<BinaryForm> to_binary() const;
  std::string to_string() const;

 private:
  void add(int u_exp, const Scalar& c);
  const Field* field_;
  int deg_;
  std::map<int, Scalar> t_;
};

}  // namespace vfree
