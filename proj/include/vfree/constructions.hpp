#pragma once

// Explicit constructions on cubic surfaces and hypersurfaces: normal forms of
// nodal tangent sections, tangent-bundle pullbacks, the xi/eta and delta
// identities, the six-point configuration, the nodal-section search, very free
// curve building, and the char-2 Fermat analysis.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vfree/hypersurface.hpp"
#include "vfree/sheaf.hpp"

namespace vfree {

struct Check {
  std::string name;
  std::string anchor;
  bool pass = false;
  std::string details;
};

struct VerificationReport {
  std::vector<Check> checks;
  bool all_pass() const;
  void add(std::string name, std::string anchor, bool pass, std::string details = "");
};

using CurveMap = std::vector<BinaryForm>;

// (U:V) -> (-U^3-V^3 : U^2 V : U V^2).
CurveMap standard_nodal_parametrization(const Field& f);

// After X = change * Y the cubic is Y0 Y1 Y2 + Y1^3 + Y2^3; for surfaces also
// f = Y0 Y1 Y2 + c + Y3 Q + Y3^2 L + A Y3^3.
struct TangentSectionNormalForm {
  Matrix change;
  BinaryForm q, c;
  std::optional<MultiPoly> Q, L;  // ternary, in Y0, Y1, Y2
  std::optional<Scalar> A;
  unsigned ext_degree = 1;        // over the input's field
  const Field& field() const { return change.field(); }
  MultiPoly plane_cubic() const;
  MultiPoly surface() const;      // needs Q, L, A
};

TangentSectionNormalForm nodal_normal_form(const MultiPoly& cub, const ProjPoint& node, unsigned ext_cap = 6);
// Normal form of f in P^3 along the nodal section by the plane through x.
TangentSectionNormalForm surface_normal_form(const MultiPoly& f, const Hyperplane& plane, const ProjPoint& x,
                                             unsigned ext_cap = 6);
// The surface Y0 Y1 Y2 + Y1^3 + Y2^3 + Y3 Q + Y3^2 L + A Y3^3 with identity change.
TangentSectionNormalForm normal_form_surface(const MultiPoly& Q, const MultiPoly& L, const Scalar& A);

// Monad O -> O(d)^{n+1} -> O(e d) with alpha = h and beta = grad f o h.
MonadP1 pullback_tangent(const MultiPoly& f, const CurveMap& h);
struct VeryFreeResult {
  bool very_free = false;
  SplittingType splitting;
};
VeryFreeResult very_free(const MultiPoly& f, const CurveMap& h);

// True when a - b = lambda * h for some Laurent form lambda.
bool equal_mod_euler(const std::vector<LaurentForm>& a, const std::vector<LaurentForm>& b, const CurveMap& h);

VerificationReport verify_xi_eta(const TangentSectionNormalForm& nf);
VerificationReport verify_cuspidal_delta(const Field& f, const Scalar& alpha);

struct SixPointResult {
  std::optional<ProjPoint> q;
  std::vector<ProjPoint> diagonals;  // of the quadrilateral P0 P1 P2 P3
  bool diagonals_on_p4p5 = false;
  bool fast_path = false;
  std::vector<std::string> certificate;
};
SixPointResult six_point_diagonal(const std::vector<ProjPoint>& pts);

struct NodalSection {
  ProjPoint z, y, x;
  LineP3 line;
  Hyperplane plane;
  PlaneSection section;
  CubicSectionClass cls;
  unsigned candidates_tried = 0;
};
NodalSection find_nodal_section(const MultiPoly& f, const LineCensus& census, unsigned ext_cap = 4);

struct CurveOnX {
  MultiPoly f;
  CurveMap h;
  SplittingType splitting;
  int anticanonical_degree = 0;
  std::string method;
  std::vector<Hyperplane> hyperplanes;  // slicing hyperplanes, outermost first
};
CurveOnX build_very_free_curve(const MultiPoly& f, unsigned ext_cap = 4,
                               std::optional<std::uint64_t> seed = std::nullopt);

MultiPoly fermat_cubic(const Field& f, unsigned nvars = 4);
// (U^3+U^2V : U^3+U^2V+V^3 : U^2V+V^3 : UV^2) over F_2.
CurveMap fermat_char2_curve();

struct Fermat2Report {
  unsigned k = 0;
  std::size_t points = 0;
  std::map<std::string, std::size_t> frequencies;
  bool trichotomy = true;
  std::optional<ProjPoint> witness;
  std::size_t concurrent_points = 0;      // sections of type ThreeLinesConcurrent
  std::size_t rational_eckardt = 0;       // Eckardt points with coordinates in F_{2^k}
  LineCensus lines;
  EckardtCensus census;
};
Fermat2Report fermat_char2_report(unsigned k);

}  // namespace vfree
