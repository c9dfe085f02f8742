#pragma once

// Projective cubic hypersurfaces: smoothness, tangent hyperplanes, plane
// sections, plane-cubic classification, lines and Eckardt points on cubic
// surfaces.

#include <optional>
#include <string>
#include <vector>

#include "vfree/groebner.hpp"
#include "vfree/linalg.hpp"
#include "vfree/poly.hpp"

namespace vfree {

// Coordinates normalized so the first nonzero one is 1.
struct ProjPoint {
  std::vector<Scalar> coords;
  const Field& field() const { return coords.at(0).field(); }
  std::size_t size() const { return coords.size(); }
  ProjPoint embed(const Field& target) const;
  std::string to_string() const;  // "(1:0:g+1)"
  friend bool operator==(const ProjPoint&, const ProjPoint&) = default;
  friend auto operator<=>(const ProjPoint& a, const ProjPoint& b) { return a.coords <=> b.coords; }
};

ProjPoint make_point(std::vector<Scalar> coords);  // normalizes; throws on zero vector
using Hyperplane = ProjPoint;                       // coefficient vector of sum h_i X_i

// Line in P^3 as a 2 x 4 matrix in reduced row echelon form.
struct LineP3 {
  Matrix basis;
  std::vector<BinaryForm> parametrization() const;  // (U, V) -> U row0 + V row1
  bool contains(const ProjPoint& p) const;
  std::string to_string() const;
  friend bool operator==(const LineP3& a, const LineP3& b) { return a.basis == b.basis; }
};

LineP3 line_through(const ProjPoint& p, const ProjPoint& q);
bool operator<(const LineP3& a, const LineP3& b);

// f must be a nonzero homogeneous cubic; throws Input otherwise.
void require_cubic(const MultiPoly& f);

// Nullstellensatz test on stratified charts X_0 = ... = X_{i-1} = 0, X_i = 1.
bool is_smooth(const MultiPoly& f);
// Singular points with residue degree <= ext_cap, each once in its minimal field, found by
// enumerating P^n(F_{q^k}); throws a Budget error past `budget` points per level.
std::vector<ProjPoint> singular_points_scan(const MultiPoly& f, unsigned ext_cap,
                                            std::uint64_t budget = 1'000'000);
// Projective zeros of homogeneous polynomials over the closure, via stratified charts, all in
// one field F_{|K|^e}, e <= ext_cap. Sets positive_dimensional when a chart has a curve of zeros.
struct ProjectiveSolutions {
  const Field* field = nullptr;
  std::vector<ProjPoint> points;
  bool positive_dimensional = false;
};
ProjectiveSolutions projective_zeros(const std::vector<MultiPoly>& forms, unsigned ext_cap,
                                     unsigned min_ext = 1);
std::vector<ProjPoint> singular_points(const MultiPoly& f, unsigned ext_cap, bool* positive_dimensional = nullptr);

Hyperplane tangent_hyperplane(const MultiPoly& f, const ProjPoint& x);

struct PlaneSection {
  MultiPoly cubic;  // ternary cubic in the plane coordinates Y0, Y1, Y2
  Matrix chart;     // 4 x 3 (in general (n+1) x n): X = chart * Y
  std::vector<unsigned> plane_vars;  // ambient index of each plane coordinate
  ProjPoint to_ambient(const ProjPoint& y) const;
  ProjPoint to_plane(const ProjPoint& x) const;  // x must lie in the hyperplane
};
PlaneSection plane_section(const MultiPoly& f, const Hyperplane& h);

enum class CubicClass {
  SmoothCubic,
  NodalIntegral,
  CuspidalIntegral,
  LineConicTransverse,
  LineConicTangent,
  ThreeLinesTriangle,
  ThreeLinesConcurrent,
  LineDoubleLine,
  TripleLine,
};
std::string to_string(CubicClass c);

struct CubicSectionClass {
  CubicClass tag = CubicClass::SmoothCubic;
  std::optional<ProjPoint> singular_point;
  unsigned ext_degree_used = 1;
  std::vector<ProjPoint> singular_points;  // all of them when finitely many
  std::vector<Hyperplane> lines;           // linear components (distinct), as coefficient vectors
};
CubicSectionClass classify_plane_cubic(const MultiPoly& cub, unsigned ext_cap = 6);

// Quadratic and cubic parts after moving a singular point p to (1:0:0): g = Y0 q(Y1,Y2) + c(Y1,Y2).
struct LocalForm {
  Matrix move;  // 3 x 3, X = move * Y, first column = p
  BinaryForm q, c;
};
LocalForm local_form_at(const MultiPoly& cub, const ProjPoint& p);
bool has_distinct_tangents(const BinaryForm& q);

struct LineCensus {
  const Field* field = nullptr;  // working field F_{q^e}
  unsigned ext_degree = 1;
  std::vector<LineP3> lines;     // canonical order
};
LineCensus lines_on_cubic_surface(const MultiPoly& f, unsigned ext_cap = 12);
// Coefficients in (U, V) of f(images), where images are linear forms in nv unknowns followed by
// U and V (nv + 2 variables); returned as polynomials in the nv unknowns.
std::vector<MultiPoly> curve_coefficient_equations(const MultiPoly& f, const std::vector<MultiPoly>& images,
                                                   unsigned nv);
// Solves several affine systems over the same working field F_{|K|^e} (e <= ext_cap).
std::vector<AffineSolutions> solve_in_common_field(const std::vector<std::vector<MultiPoly>>& systems,
                                                   unsigned ext_cap, unsigned min_ext = 1);
// Enumerates every line of P^3 over `field` (oracle for small fields).
std::vector<LineP3> lines_by_enumeration(const MultiPoly& f, const Field& field);

struct EckardtCensus {
  std::vector<ProjPoint> eckardt;    // on exactly three lines
  std::vector<ProjPoint> two_line;   // on exactly two lines
  std::size_t incident_pairs = 0;    // pairs of distinct lines that meet
  std::vector<int> meets_per_line;   // for each line, how many others it meets
};
std::optional<ProjPoint> intersect(const LineP3& a, const LineP3& b);
EckardtCensus eckardt_points(const LineCensus& lines);

}  // namespace vfree
