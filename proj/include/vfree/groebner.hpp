#pragma once

// Buchberger's algorithm (degrevlex) and a zero-dimensional solver.

#include <vector>

#include "vfree/poly.hpp"

namespace vfree {

// Reduced, monic Groebner basis sorted by decreasing leading monomial.
std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens);
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis);
bool is_unit_ideal(const std::vector<MultiPoly>& gens);
// Leading-monomial test: every variable has a pure power among the leading monomials.
bool is_zero_dimensional(const std::vector<MultiPoly>& basis);
// Monomials outside the leading-term ideal (finite when zero-dimensional).
std::vector<Monomial> standard_monomials(const std::vector<MultiPoly>& basis);

struct AffineSolutions {
  const Field* field = nullptr;          // field containing every coordinate
  std::vector<std::vector<Scalar>> points;  // canonical order
  bool positive_dimensional = false;     // common zero locus has a component of dimension > 0
};

// Common zeros over the algebraic closure of the generators' field K (finite fields only), all
// coordinates in the smallest F_{|K|^e}, e <= max_ext, containing them; throws a Budget error when
// e would exceed max_ext. Any larger working field is always reached from K in one embedding.
// `min_ext` forces a working field of at least that degree (degree is a multiple of it).
AffineSolutions solve_affine(const std::vector<MultiPoly>& gens, unsigned max_ext, unsigned min_ext = 1);

}  // namespace vfree
