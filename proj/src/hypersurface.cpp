#include "vfree/hypersurface.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "vfree/error.hpp"

namespace vfree {

namespace {

unsigned rel_degree(const Field& w, const Field& k) { return w.degree() / k.degree(); }

// Free-entry layout of the RREF cell with pivots (i, j) for lines in P^n.
struct LineCell {
  unsigned i, j;
  std::vector<std::pair<unsigned, unsigned>> unknowns;  // (row, column)
};

std::vector<LineCell> line_cells(unsigned n) {
  std::vector<LineCell> cells;
  for (unsigned i = 0; i <= n; ++i)
    for (unsigned j = i + 1; j <= n; ++j) {
      LineCell c{i, j, {}};
      for (unsigned k = i + 1; k <= n; ++k)
        if (k != j) c.unknowns.push_back({0, k});
      for (unsigned k = j + 1; k <= n; ++k) c.unknowns.push_back({1, k});
      cells.push_back(c);
    }
  return cells;
}

// Images X_k = U row0_k + V row1_k with row entries constants or unknowns.
std::vector<MultiPoly> cell_images(const LineCell& c, unsigned n, const Field& K) {
  unsigned nv = static_cast<unsigned>(c.unknowns.size());
  unsigned tot = nv + 2;
  std::vector<MultiPoly> img;
  for (unsigned k = 0; k <= n; ++k) {
    MultiPoly x(K, tot);
    for (unsigned r = 0; r < 2; ++r) {
      MultiPoly uv = MultiPoly::variable(K, tot, nv + r);
      unsigned piv = r == 0 ? c.i : c.j;
      if (k == piv) {
        x += uv;
        continue;
      }
      for (unsigned t = 0; t < nv; ++t)
        if (c.unknowns[t] == std::pair<unsigned, unsigned>{r, k})
          x += MultiPoly::variable(K, tot, t) * uv;
    }
    img.push_back(x);
  }
  return img;
}

Matrix cell_basis(const LineCell& c, unsigned n, const Field& W, const std::vector<Scalar>& vals) {
  Matrix b(W, 2, n + 1);
  b(0, c.i) = W.one();
  b(1, c.j) = W.one();
  for (std::size_t t = 0; t < c.unknowns.size(); ++t) b(c.unknowns[t].first, c.unknowns[t].second) = vals[t];
  return b;
}

bool line_in(const MultiPoly& fw, const Matrix& basis) {
  std::vector<BinaryForm> h;
  for (std::size_t k = 0; k < basis.cols(); ++k) h.push_back(BinaryForm(basis.field(), {basis(0, k), basis(1, k)}));
  return compose_with_curve(fw, h).is_zero();
}

// All lines contained in V(f) for f in n + 1 variables, as RREF bases over one working field.
struct LineSearch {
  const Field* field;
  std::vector<Matrix> bases;
  bool infinite = false;
};

LineSearch find_lines(const MultiPoly& f, unsigned ext_cap, unsigned min_ext = 1) {
  const Field& K = f.field();
  unsigned n = f.nvars() - 1;
  auto cells = line_cells(n);
  std::vector<std::vector<MultiPoly>> systems;
  std::vector<std::size_t> which;
  for (std::size_t ci = 0; ci < cells.size(); ++ci) {
    if (cells[ci].unknowns.empty()) continue;
    auto eqs = curve_coefficient_equations(f, cell_images(cells[ci], n, K),
                                           static_cast<unsigned>(cells[ci].unknowns.size()));
    if (eqs.empty()) eqs.push_back(MultiPoly(K, static_cast<unsigned>(cells[ci].unknowns.size())));
    systems.push_back(eqs);
    which.push_back(ci);
  }
  auto sols = solve_in_common_field(systems, ext_cap, min_ext);
  LineSearch out;
  out.field = sols.empty() ? &K.extension(min_ext) : sols[0].field;
  for (const auto& s : sols)
    if (s.positive_dimensional) out.infinite = true;
  for (const auto& s : sols)
    if (!s.positive_dimensional) out.field = s.field;
  const Field& W = *out.field;
  MultiPoly fw = f.embed(W);
  for (std::size_t s = 0; s < sols.size(); ++s) {
    if (sols[s].positive_dimensional) continue;
    for (const auto& pt : sols[s].points)
      out.bases.push_back(cell_basis(cells[which[s]], n, W, embed(pt, W)));
  }
  for (const auto& c : cells)
    if (c.unknowns.empty()) {
      Matrix b = cell_basis(c, n, W, {});
      if (line_in(fw, b)) out.bases.push_back(b);
    }
  return out;
}

bool in_subfield(const Scalar& x, const mpz_class& q) { return x.pow(q) == x; }

}  // namespace

ProjPoint ProjPoint::embed(const Field& target) const { return ProjPoint{vfree::embed(coords, target)}; }

std::string ProjPoint::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (i) s += ":";
    s += coords[i].to_string();
  }
  return s + ")";
}

ProjPoint make_point(std::vector<Scalar> coords) {
  if (coords.empty()) throw_input("empty point");
  auto it = std::find_if(coords.begin(), coords.end(), [](const Scalar& s) { return !s.is_zero(); });
  if (it == coords.end()) throw_input("zero vector is not a projective point");
  Scalar inv = it->inverse();
  for (auto& c : coords) c *= inv;
  return ProjPoint{std::move(coords)};
}

std::vector<BinaryForm> LineP3::parametrization() const {
  std::vector<BinaryForm> h;
  for (std::size_t k = 0; k < basis.cols(); ++k) h.push_back(BinaryForm(basis.field(), {basis(0, k), basis(1, k)}));
  return h;
}

bool LineP3::contains(const ProjPoint& p) const {
  const Field& W = basis.field().has_subfield(p.field()) ? basis.field() : p.field();
  Matrix m(W, 3, basis.cols());
  Matrix b = basis.embed(W);
  auto pc = vfree::embed(p.coords, W);
  for (std::size_t k = 0; k < basis.cols(); ++k) {
    m(0, k) = b(0, k);
    m(1, k) = b(1, k);
    m(2, k) = pc[k];
  }
  return rank(m) == 2;
}

std::string LineP3::to_string() const {
  return "<" + ProjPoint{basis.row(0)}.to_string() + "," + ProjPoint{basis.row(1)}.to_string() + ">";
}

LineP3 line_through(const ProjPoint& p, const ProjPoint& q) {
  Matrix m = Matrix::from_rows(p.field(), {p.coords, vfree::embed(q.coords, p.field())});
  auto r = rref(m);
  if (r.pivots.size() != 2) throw_input("points coincide: " + p.to_string());
  return LineP3{r.m};
}

bool operator<(const LineP3& a, const LineP3& b) {
  auto ra = a.basis.row(0), rb = b.basis.row(0);
  if (ra != rb) return ra < rb;
  return a.basis.row(1) < b.basis.row(1);
}

void require_cubic(const MultiPoly& f) {
  if (f.is_zero() || !f.is_homogeneous() || f.total_degree() != 3)
    throw_input("expected a nonzero homogeneous cubic");
}

std::vector<MultiPoly> curve_coefficient_equations(const MultiPoly& f, const std::vector<MultiPoly>& images,
                                                   unsigned nv) {
  MultiPoly g = substitute(f, images);
  std::map<std::pair<unsigned, unsigned>, MultiPolyBuilder> groups;
  for (const auto& t : g.terms()) {
    auto key = std::make_pair(unsigned(t.mono[nv]), unsigned(t.mono[nv + 1]));
    auto it = groups.try_emplace(key, g.field(), nv).first;
    Monomial m{};
    for (unsigned i = 0; i < nv; ++i) m[i] = t.mono[i];
    it->second.add(m, t.coeff);
  }
  std::vector<MultiPoly> out;
  for (auto& [k, b] : groups) {
    MultiPoly p = b.build();
    if (!p.is_zero()) out.push_back(p);
  }
  return out;
}

std::vector<AffineSolutions> solve_in_common_field(const std::vector<std::vector<MultiPoly>>& systems,
                                                   unsigned ext_cap, unsigned min_ext) {
  std::vector<AffineSolutions> out;
  if (systems.empty()) return out;
  const Field& K = systems[0].at(0).field();
  unsigned e = min_ext;
  for (const auto& s : systems) {
    out.push_back(solve_affine(s, ext_cap, min_ext));
    if (!out.back().positive_dimensional) e = std::lcm(e, rel_degree(*out.back().field, K));
  }
  if (e > ext_cap)
    throw_budget("extension cap " + std::to_string(ext_cap) + " exceeded: need degree " + std::to_string(e));
  const Field& W = K.extension(e);
  for (std::size_t i = 0; i < systems.size(); ++i) {
    if (out[i].positive_dimensional) {
      out[i].field = &W;
      continue;
    }
    if (out[i].field != &W) out[i] = solve_affine(systems[i], ext_cap, e);
    if (out[i].field != &W) throw_integrity("working field mismatch in common solve");
  }
  return out;
}

bool is_smooth(const MultiPoly& f) {
  unsigned nv = f.nvars();
  auto grad = gradient(f);
  const Field& K = f.field();
  for (unsigned i = 0; i < nv; ++i) {
    std::vector<MultiPoly> gens{f};
    for (const auto& g : grad) gens.push_back(g);
    for (unsigned j = 0; j < i; ++j) gens.push_back(MultiPoly::variable(K, nv, j));
    gens.push_back(MultiPoly::variable(K, nv, i) - MultiPoly::constant(K.one(), nv));
    if (!is_unit_ideal(gens)) return false;
  }
  return true;
}

std::vector<ProjPoint> singular_points_scan(const MultiPoly& f, unsigned ext_cap, std::uint64_t budget) {
  const Field& K = f.field();
  if (!K.is_finite()) throw_input("point scans need a finite field");
  unsigned nv = f.nvars();
  std::vector<ProjPoint> out;
  for (unsigned k = 1; k <= ext_cap; ++k) {
    const Field& L = K.extension(k);
    mpz_class N = L.order();
    mpz_class count = 0, pw = 1;
    for (unsigned i = 0; i < nv; ++i) {
      count += pw;
      pw *= N;
    }
    if (count > budget) throw_budget("scan budget exceeded");
    std::vector<mpz_class> sub_orders;
    for (unsigned d = 1; d < k; ++d)
      if (k % d == 0) sub_orders.push_back(K.extension(d).order());
    MultiPoly fl = f.embed(L);
    std::vector<MultiPoly> grad;
    for (const auto& g : gradient(fl)) grad.push_back(g);
    std::uint64_t n = L.size_u64();
    for (unsigned lead = 0; lead < nv; ++lead) {
      unsigned free = nv - 1 - lead;
      std::uint64_t total = 1;
      for (unsigned t = 0; t < free; ++t) total *= n;
      for (std::uint64_t idx = 0; idx < total; ++idx) {
        std::vector<Scalar> x(nv, L.zero());
        x[lead] = L.one();
        std::uint64_t r = idx;
        for (unsigned t = 0; t < free; ++t) {
          x[lead + 1 + t] = L.element(r % n);
          r /= n;
        }
        if (!fl.eval(x).is_zero()) continue;
        bool sing = true;
        for (const auto& g : grad)
          if (!g.eval(x).is_zero()) {
            sing = false;
            break;
          }
        if (!sing) continue;
        bool minimal = true;
        for (const auto& q : sub_orders)
          if (std::all_of(x.begin(), x.end(), [&](const Scalar& s) { return in_subfield(s, q); })) {
            minimal = false;
            break;
          }
        if (minimal) out.push_back(ProjPoint{x});
      }
    }
  }
  return out;
}

ProjectiveSolutions projective_zeros(const std::vector<MultiPoly>& forms, unsigned ext_cap, unsigned min_ext) {
  if (forms.empty()) throw_input("projective_zeros needs at least one form");
  const Field& K = forms[0].field();
  unsigned nv = forms[0].nvars();
  std::vector<std::vector<MultiPoly>> systems;
  for (unsigned i = 0; i < nv; ++i) {
    std::vector<MultiPoly> gens = forms;
    for (unsigned j = 0; j < i; ++j) gens.push_back(MultiPoly::variable(K, nv, j));
    gens.push_back(MultiPoly::variable(K, nv, i) - MultiPoly::constant(K.one(), nv));
    systems.push_back(std::move(gens));
  }
  auto sols = solve_in_common_field(systems, ext_cap, min_ext);
  ProjectiveSolutions out;
  out.field = sols[0].field;
  for (const auto& s : sols) {
    if (s.positive_dimensional) out.positive_dimensional = true;
    for (const auto& p : s.points) out.points.push_back(make_point(p));
  }
  std::sort(out.points.begin(), out.points.end());
  out.points.erase(std::unique(out.points.begin(), out.points.end()), out.points.end());
  return out;
}

std::vector<ProjPoint> singular_points(const MultiPoly& f, unsigned ext_cap, bool* positive_dimensional) {
  std::vector<MultiPoly> forms{f};
  for (const auto& g : gradient(f))
    if (!g.is_zero()) forms.push_back(g);
  auto z = projective_zeros(forms, ext_cap);
  if (positive_dimensional) *positive_dimensional = z.positive_dimensional;
  return z.points;
}

Hyperplane tangent_hyperplane(const MultiPoly& f, const ProjPoint& x) {
  MultiPoly fw = f.embed(x.field());
  if (!fw.eval(x.coords).is_zero()) throw_input("point " + x.to_string() + " is not on the hypersurface");
  std::vector<Scalar> h;
  for (const auto& g : gradient(fw)) h.push_back(g.eval(x.coords));
  if (std::all_of(h.begin(), h.end(), [](const Scalar& s) { return s.is_zero(); }))
    throw_input("point " + x.to_string() + " is singular");
  return make_point(h);
}

ProjPoint PlaneSection::to_ambient(const ProjPoint& y) const {
  const Field& W = y.field().has_subfield(chart.field()) ? y.field() : chart.field();
  return make_point(chart.embed(W).apply(vfree::embed(y.coords, W)));
}

ProjPoint PlaneSection::to_plane(const ProjPoint& x) const {
  std::vector<Scalar> y;
  for (unsigned v : plane_vars) y.push_back(x.coords[v]);
  ProjPoint p = make_point(y);
  if (to_ambient(p) != x) throw_input("point " + x.to_string() + " is not in the plane");
  return p;
}

PlaneSection plane_section(const MultiPoly& f, const Hyperplane& h) {
  const Field& W = h.field();
  unsigned nv = f.nvars();
  if (h.size() != nv) throw_input("hyperplane has the wrong number of coordinates");
  unsigned piv = 0;
  while (h.coords[piv].is_zero()) ++piv;
  PlaneSection ps{MultiPoly(W, nv - 1), Matrix(W, nv, nv - 1), {}};
  for (unsigned k = 0; k < nv; ++k)
    if (k != piv) ps.plane_vars.push_back(k);
  std::vector<MultiPoly> img(nv, MultiPoly(W, nv - 1));
  for (unsigned col = 0; col < nv - 1; ++col) {
    unsigned k = ps.plane_vars[col];
    ps.chart(k, col) = W.one();
    ps.chart(piv, col) = -h.coords[k];
    img[k] = MultiPoly::variable(W, nv - 1, col);
    img[piv] -= MultiPoly::variable(W, nv - 1, col) * h.coords[k];
  }
  ps.cubic = substitute(f.embed(W), img);
  if (ps.cubic.is_zero()) throw_input("hyperplane " + h.to_string() + " is contained in the hypersurface");
  return ps;
}

std::string to_string(CubicClass c) {
  switch (c) {
    case CubicClass::SmoothCubic: return "SmoothCubic";
    case CubicClass::NodalIntegral: return "NodalIntegral";
    case CubicClass::CuspidalIntegral: return "CuspidalIntegral";
    case CubicClass::LineConicTransverse: return "LineConicTransverse";
    case CubicClass::LineConicTangent: return "LineConicTangent";
    case CubicClass::ThreeLinesTriangle: return "ThreeLinesTriangle";
    case CubicClass::ThreeLinesConcurrent: return "ThreeLinesConcurrent";
    case CubicClass::LineDoubleLine: return "LineDoubleLine";
    case CubicClass::TripleLine: return "TripleLine";
  }
  return "?";
}

LocalForm local_form_at(const MultiPoly& cub, const ProjPoint& p) {
  const Field& W = p.field();
  if (cub.nvars() != 3 || p.size() != 3) throw_input("local_form_at expects a ternary cubic and a plane point");
  unsigned lead = 0;
  while (p.coords[lead].is_zero()) ++lead;
  Matrix move(W, 3, 3);
  for (unsigned k = 0; k < 3; ++k) move(k, 0) = p.coords[k];
  unsigned col = 1;
  for (unsigned k = 0; k < 3; ++k)
    if (k != lead) move(k, col++) = W.one();
  MultiPoly g = linear_substitute(cub.embed(W), move);
  std::vector<Scalar> q(3, W.zero()), c(4, W.zero());
  for (const auto& t : g.terms()) {
    if (t.mono[0] == 1)
      q[t.mono[2]] = t.coeff;
    else if (t.mono[0] == 0)
      c[t.mono[2]] = t.coeff;
    else
      throw_input("point " + p.to_string() + " is not singular");
  }
  return LocalForm{move, BinaryForm(W, q), BinaryForm(W, c)};
}

bool has_distinct_tangents(const BinaryForm& q) {
  if (q.is_zero()) return false;
  const Scalar &a = q.coeff(0), &b = q.coeff(1), &c = q.coeff(2);
  if (q.field().characteristic() == 2) return !b.is_zero();
  return !(b * b - q.field().from_int(4) * a * c).is_zero();
}

CubicSectionClass classify_plane_cubic(const MultiPoly& cub, unsigned ext_cap) {
  require_cubic(cub);
  if (cub.nvars() != 3) throw_input("expected a ternary cubic");
  const Field& K = cub.field();
  std::vector<MultiPoly> forms{cub};
  for (const auto& g : gradient(cub))
    if (!g.is_zero()) forms.push_back(g);
  auto sing = projective_zeros(forms, ext_cap);
  unsigned e = rel_degree(*sing.field, K);
  auto lines = find_lines(cub, ext_cap, e);
  const Field& W = *lines.field;
  if (lines.infinite) throw_integrity("nonzero plane cubic with infinitely many lines");
  if (&W != sing.field) {
    sing = projective_zeros(forms, ext_cap, rel_degree(W, K));
    if (sing.field != &W) throw_integrity("working field mismatch in classification");
  }
  CubicSectionClass out;
  out.ext_degree_used = rel_degree(W, K);
  out.singular_points = sing.points;
  for (const auto& b : lines.bases) {
    auto ker = kernel(b);
    if (ker.size() != 1) throw_integrity("line basis of wrong rank");
    out.lines.push_back(make_point(ker[0]));
  }
  std::sort(out.lines.begin(), out.lines.end());
  std::size_t nl = out.lines.size(), ns = sing.points.size();
  auto fail = [&]() -> CubicSectionClass {
    throw_integrity("inconsistent plane cubic: " + std::to_string(nl) + " lines, " + std::to_string(ns) +
                    " singular points");
  };
  auto single = [&](CubicClass tag) {
    out.tag = tag;
    out.singular_point = sing.points.front();
    return out;
  };
  if (sing.positive_dimensional) {
    out.singular_points.clear();
    if (nl == 1) out.tag = CubicClass::TripleLine;
    else if (nl == 2) out.tag = CubicClass::LineDoubleLine;
    else return fail();
    return out;
  }
  switch (nl) {
    case 0: {
      if (ns == 0) return out;
      if (ns != 1) return fail();
      auto lf = local_form_at(cub, sing.points.front());
      if (resultant_bin(lf.q, lf.c).is_zero()) throw_integrity("irreducible cubic with resultant zero");
      return single(has_distinct_tangents(lf.q) ? CubicClass::NodalIntegral : CubicClass::CuspidalIntegral);
    }
    case 1:
      if (ns == 2) {
        out.tag = CubicClass::LineConicTransverse;
        return out;
      }
      if (ns == 1) return single(CubicClass::LineConicTangent);
      return fail();
    case 3:
      if (ns == 3) {
        out.tag = CubicClass::ThreeLinesTriangle;
        return out;
      }
      if (ns == 1) return single(CubicClass::ThreeLinesConcurrent);
      return fail();
    default:
      return fail();
  }
}

LineCensus lines_on_cubic_surface(const MultiPoly& f, unsigned ext_cap) {
  require_cubic(f);
  if (f.nvars() != 4) throw_input("expected a cubic surface in P^3");
  if (!f.field().is_finite()) throw_input("line census needs a finite field");
  auto ls = find_lines(f, ext_cap);
  if (ls.infinite) throw_integrity("surface contains infinitely many lines (not smooth)");
  LineCensus out;
  out.field = ls.field;
  out.ext_degree = rel_degree(*ls.field, f.field());
  for (auto& b : ls.bases) out.lines.push_back(LineP3{b});
  std::sort(out.lines.begin(), out.lines.end());
  out.lines.erase(std::unique(out.lines.begin(), out.lines.end()), out.lines.end());
  if (out.lines.size() > 27)
    throw_integrity("found " + std::to_string(out.lines.size()) + " lines: surface is not smooth");
  if (out.lines.size() < 27)
    throw_verification("only " + std::to_string(out.lines.size()) + " lines found over the closure");
  return out;
}

std::vector<LineP3> lines_by_enumeration(const MultiPoly& f, const Field& W) {
  unsigned n = f.nvars() - 1;
  MultiPoly fw = f.embed(W);
  std::uint64_t q = W.size_u64();
  std::vector<LineP3> out;
  for (const auto& c : line_cells(n)) {
    std::uint64_t total = 1;
    for (std::size_t t = 0; t < c.unknowns.size(); ++t) total *= q;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<Scalar> vals;
      std::uint64_t r = idx;
      for (std::size_t t = 0; t < c.unknowns.size(); ++t) {
        vals.push_back(W.element(r % q));
        r /= q;
      }
      Matrix b = cell_basis(c, n, W, vals);
      if (line_in(fw, b)) out.push_back(LineP3{b});
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<ProjPoint> intersect(const LineP3& a, const LineP3& b) {
  const Field& W = a.basis.field();
  Matrix bb = b.basis.embed(W);
  std::size_t n = a.basis.cols();
  Matrix m(W, n, 4);
  for (std::size_t k = 0; k < n; ++k) {
    m(k, 0) = a.basis(0, k);
    m(k, 1) = a.basis(1, k);
    m(k, 2) = -bb(0, k);
    m(k, 3) = -bb(1, k);
  }
  auto ker = kernel(m);
  if (ker.empty()) return std::nullopt;
  if (ker.size() > 1) throw_input("lines coincide");
  std::vector<Scalar> p(n, W.zero());
  for (std::size_t k = 0; k < n; ++k) p[k] = ker[0][0] * a.basis(0, k) + ker[0][1] * a.basis(1, k);
  return make_point(p);
}

EckardtCensus eckardt_points(const LineCensus& census) {
  const auto& L = census.lines;
  EckardtCensus out;
  out.meets_per_line.assign(L.size(), 0);
  std::map<ProjPoint, std::set<std::size_t>> at;
  for (std::size_t i = 0; i < L.size(); ++i)
    for (std::size_t j = i + 1; j < L.size(); ++j) {
      auto p = intersect(L[i], L[j]);
      if (!p) continue;
      ++out.incident_pairs;
      ++out.meets_per_line[i];
      ++out.meets_per_line[j];
      at[*p].insert(i);
      at[*p].insert(j);
    }
  for (const auto& [p, ls] : at) {
    if (ls.size() >= 4) throw_integrity("point " + p.to_string() + " lies on " + std::to_string(ls.size()) + " lines");
    (ls.size() == 3 ? out.eckardt : out.two_line).push_back(p);
  }
  if (out.incident_pairs != 3 * out.eckardt.size() + out.two_line.size())
    throw_integrity("pair-count identity fails");
  return out;
}

}  // namespace vfree
