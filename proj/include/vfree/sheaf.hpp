#pragma once

// Cohomology of monads O(a) -> (+)_i O(b_i) -> O(c) on the projective line.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vfree/poly.hpp"

namespace vfree {

struct MonadP1 {
  const Field* field = nullptr;
  int a = 0;
  std::vector<int> b;
  int c = 0;
  std::optional<std::vector<BinaryForm>> alpha;  // alpha[i] has degree b[i] - a
  std::optional<std::vector<BinaryForm>> beta;   // beta[i] has degree c - b[i]

  std::size_t rank() const;
  int degree() const;  // sum b - a - c (terms present only when the maps are)
};

struct MonadReport {
  bool ok = true;
  std::vector<std::string> violations;
};

MonadReport validate_monad(const MonadP1& m);

// dim of (ker beta / im alpha) in degree l, over the base field.
int quotient_graded_dim(const MonadP1& m, int l);
// h^0(E(l)) via stabilized Hom(m^k, T)_l.
int h0_twist(const MonadP1& m, int l);

struct SplittingType {
  std::vector<int> parts;  // descending
  friend bool operator==(const SplittingType&, const SplittingType&) = default;
  std::string to_string() const;  // "[2,1]"
};

struct SplittingReport {
  SplittingType type;
  std::map<int, int> h0;             // every twist computed, including the extra checks
  std::vector<int> rr_twists;        // twists used only for the Riemann-Roch check
  int window_lo = 0, window_hi = 0;  // scanned window of l for first differences
};

SplittingReport splitting_report(const MonadP1& m);
SplittingType splitting_type(const MonadP1& m);
bool is_very_free_splitting(const SplittingType& s);
// h^0(O(d_1) + ... + O(d_r) twisted by l).
int h0_of_splitting(const SplittingType& s, int l);

}  // namespace vfree
