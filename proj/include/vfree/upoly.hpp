#pragma once

// Dense univariate polynomials over a Field, and root finding over finite
// fields.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "vfree/field.hpp"

namespace vfree {

class UPoly {
 public:
  explicit UPoly(const Field& f) : field_(&f) {}
  UPoly(const Field& f, std::vector<Scalar> coeffs);  // low -> high

  static UPoly x(const Field& f);
  static UPoly constant(const Scalar& c);
  static UPoly monomial(const Scalar& c, int deg);

  const Field& field() const { return *field_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  bool is_zero() const { return c_.empty(); }
  Scalar coeff(int i) const;
  const Scalar& leading() const { return c_.back(); }
  const std::vector<Scalar>& coeffs() const { return c_; }

  UPoly operator-() const;
  friend UPoly operator+(const UPoly& a, const UPoly& b);
  friend UPoly operator-(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const UPoly& b);
  friend UPoly operator*(const UPoly& a, const Scalar& s);
  friend bool operator==(const UPoly& a, const UPoly& b);

  // Euclidean division; divisor nonzero.
  std::pair<UPoly, UPoly> divmod(const UPoly& d) const;
  UPoly operator/(const UPoly& d) const { return divmod(d).first; }
  UPoly operator%(const UPoly& d) const { return divmod(d).second; }

  UPoly monic() const;
  UPoly derivative() const;
  Scalar eval(const Scalar& x) const;
  UPoly embed(const Field& target) const;
  std::string to_string(const std::string& var = "x") const;

 private:
  void trim();
  const Field* field_;
  std::vector<Scalar> c_;
};

UPoly gcd(const UPoly& a, const UPoly& b);  // monic (or zero)
UPoly powmod(const UPoly& base, const mpz_class& e, const UPoly& mod);
// Product of distinct monic irreducible factors (finite fields or Q with char 0 derivative).
UPoly radical(const UPoly& f);

struct Root {
  Scalar value;              // element of the minimal field F_{q^ext_degree}
  unsigned ext_degree = 1;   // relative to the polynomial's field
  unsigned multiplicity = 1;
};

// Distinct-degree factorization of the radical: (j, product of the degree-j factors).
std::vector<std::pair<unsigned, UPoly>> distinct_degree_factors(const UPoly& f);
// Smallest j such that every root of f lies in F_{q^j}; 0 for constants.
unsigned splitting_degree(const UPoly& f);
// Distinct roots of f lying in f's own field, in canonical order.
std::vector<Scalar> roots_in_field(const UPoly& f);

// All roots with residue degree <= max_ext, each once in its minimal field,
// with multiplicity. Deterministic: distinct-degree factorization followed by
// equal-degree splitting driven by a canonical sequence of shifts (odd p) or
// trace maps (p = 2). Finite fields only.
std::vector<Root> find_roots(const UPoly& f, unsigned max_ext = 6);

// Same contract by exhaustive enumeration of each F_{q^j}; throws a Budget
// error ("scan budget exceeded") when a field to scan exceeds `budget` elements.
std::vector<Root> scan_roots(const UPoly& f, unsigned max_ext = 6,
                             std::uint64_t budget = 1'000'000);

// Least monic irreducible of degree k over F_p in canonical order (coefficients low->high, monic dropped).
std::vector<std::uint32_t> least_irreducible(std::uint64_t p, unsigned k);
bool is_irreducible_mod_p(const std::vector<std::uint32_t>& monic_low, std::uint64_t p);

}  // namespace vfree
