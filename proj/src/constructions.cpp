#include "vfree/constructions.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "vfree/error.hpp"
#include "vfree/upoly.hpp"

namespace vfree {

namespace {

using Vec = std::vector<LaurentForm>;

LaurentForm lm(const Field& F, long long c, int u, int v) { return LaurentForm::monomial(F.from_int(c), u, v); }

LaurentForm dot(const Vec& v, const std::vector<BinaryForm>& beta) {
  LaurentForm s(v[0].field(), v[0].total_degree() + beta[0].degree());
  for (std::size_t i = 0; i < v.size(); ++i) s = s + v[i] * LaurentForm::from_binary(beta[i]);
  return s;
}

std::string vec_string(const Vec& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].to_string();
  return s + ")";
}

std::vector<BinaryForm> gradient_on(const MultiPoly& f, const CurveMap& h) {
  const int d = h[0].degree();
  const int e = f.total_degree();
  std::vector<BinaryForm> out;
  for (const auto& g : gradient(f))
    out.push_back(g.is_zero() ? BinaryForm(h[0].field(), (e - 1) * d) : compose_with_curve(g, h));
  return out;
}

const Field& larger(const Field& a, const Field& b) { return a.has_subfield(b) ? a : b; }

bool same_point(const ProjPoint& a, const ProjPoint& b) {
  const Field& W = larger(a.field(), b.field());
  return a.embed(W) == b.embed(W);
}

unsigned rel(const Field& w, const Field& k) { return w.degree() / k.degree(); }

// A root of p, extending *W when needed; the result lives in *W.
Scalar root_extending(const UPoly& p, const Field*& W, const Field& base, unsigned ext_cap) {
  auto roots = find_roots(p, ext_cap);
  if (roots.empty()) throw_budget("extension cap " + std::to_string(ext_cap) + " exceeded: no root of " + p.to_string());
  const Root& r = roots.front();
  const Field& target = W->extension(r.ext_degree);
  if (rel(target, base) > ext_cap)
    throw_budget("extension cap " + std::to_string(ext_cap) + " exceeded: need degree " +
                 std::to_string(rel(target, base)));
  W = &target;
  return embed(r.value, target);
}

MultiPoly normal_cubic(const Field& F, unsigned nvars) {
  return parse_poly("X0*X1*X2+X1^3+X2^3", nvars, F);
}

MultiPoly lift3(const MultiPoly& p, unsigned nvars) {
  const Field& F = p.field();
  return substitute(p, {MultiPoly::variable(F, nvars, 0), MultiPoly::variable(F, nvars, 1),
                        MultiPoly::variable(F, nvars, 2)});
}

std::vector<Scalar> cross(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}

Scalar dot3(const std::vector<Scalar>& a, const std::vector<Scalar>& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

UPoly restrict_to_line(const MultiPoly& cub, const std::vector<Scalar>& fixed, unsigned var) {
  MultiPoly g = cub;
  for (unsigned i = 0; i < fixed.size(); ++i) g = g.specialize(i, fixed[i]);
  std::vector<Scalar> c(4, cub.field().zero());
  for (const auto& t : g.terms()) c[t.mono[var]] += t.coeff;
  return UPoly(cub.field(), c);
}

// Calls fn on the points of V(cub) in P^2(W) in canonical order until fn returns true.
template <class Fn>
bool for_each_cubic_point(const MultiPoly& cub, Fn&& fn) {
  const Field& W = cub.field();
  auto visit_roots = [&](const std::vector<Scalar>& prefix) {
    UPoly u = restrict_to_line(cub, prefix, static_cast<unsigned>(prefix.size()));
    auto point = [&](const Scalar& b) {
      std::vector<Scalar> x = prefix;
      x.push_back(b);
      while (x.size() < 3) x.push_back(W.zero());
      return ProjPoint{x};
    };
    if (u.is_zero()) {
      for (std::uint64_t i = 0; i < W.size_u64(); ++i)
        if (fn(point(W.element(i)))) return true;
      return false;
    }
    for (const auto& b : roots_in_field(u))
      if (fn(point(b))) return true;
    return false;
  };
  if (cub.eval({W.zero(), W.zero(), W.one()}).is_zero() && fn(ProjPoint{{W.zero(), W.zero(), W.one()}})) return true;
  if (visit_roots({W.zero(), W.one()})) return true;
  for (std::uint64_t a = 0; a < W.size_u64(); ++a)
    if (visit_roots({W.one(), W.element(a)})) return true;
  return false;
}

ProjPoint line_point(const Matrix& b, std::uint64_t t) {
  const Field& W = b.field();
  if (t == 0) return make_point(b.row(1));
  std::vector<Scalar> x = b.row(0);
  Scalar s = W.element(t - 1);
  for (std::size_t k = 0; k < x.size(); ++k) x[k] += s * b(1, k);
  return make_point(x);
}

CurveMap map_curve(const Matrix& m, const CurveMap& h) {
  const Field& W = m.field();
  CurveMap out;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    BinaryForm s(W, h[0].degree());
    for (std::size_t j = 0; j < m.cols(); ++j) s = s + h[j].embed(W) * m(i, j);
    out.push_back(s);
  }
  return out;
}

}  // namespace

bool VerificationReport::all_pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

void VerificationReport::add(std::string name, std::string anchor, bool pass, std::string details) {
  checks.push_back(Check{std::move(name), std::move(anchor), pass, std::move(details)});
}

CurveMap standard_nodal_parametrization(const Field& F) {
  return {parse_binary_form("-U^3-V^3", F), parse_binary_form("U^2*V", F), parse_binary_form("U*V^2", F)};
}

MultiPoly TangentSectionNormalForm::plane_cubic() const { return normal_cubic(field(), 3); }

MultiPoly TangentSectionNormalForm::surface() const {
  if (!Q || !L || !A) throw_input("normal form has no surface data");
  const Field& F = Q->field();
  MultiPoly x3 = MultiPoly::variable(F, 4, 3);
  return normal_cubic(F, 4) + x3 * lift3(*Q, 4) + x3 * x3 * lift3(*L, 4) + x3.pow(3) * *A;
}

TangentSectionNormalForm nodal_normal_form(const MultiPoly& cub, const ProjPoint& node, unsigned ext_cap) {
  require_cubic(cub);
  const Field& K = cub.field();
  if (!K.is_finite()) throw_input("normal forms need a finite field");
  auto cls = classify_plane_cubic(cub, ext_cap);
  if (cls.tag != CubicClass::NodalIntegral || !same_point(*cls.singular_point, node))
    throw_input("cubic is " + to_string(cls.tag) + ", not nodal at " + node.to_string());
  const Field* W = &larger(node.field(), K);
  ProjPoint p = node.embed(*W);
  LocalForm lf = local_form_at(cub, p);
  Matrix T = lf.move;
  auto current = [&]() { return linear_substitute(cub.embed(*W), T.embed(*W)); };

  // q = k l1 l2 with linear forms l1, l2 in (Y1, Y2)
  const BinaryForm& q = lf.q;
  Scalar a = q.coeff(0), b = q.coeff(1), c = q.coeff(2);
  std::vector<Scalar> l1, l2;
  Scalar k = W->one();
  if (a.is_zero()) {
    l1 = {W->zero(), W->one()};
    l2 = {b, c};
  } else {
    Scalar r1 = root_extending(UPoly(*W, {c, b, a}), W, K, ext_cap);
    Scalar aw = embed(a, *W), bw = embed(b, *W);
    Scalar r2 = -bw / aw - r1;
    l1 = {W->one(), -r1};
    l2 = {W->one(), -r2};
    k = aw;
  }
  l1 = embed(l1, *W);
  l2 = embed(l2, *W);
  k = embed(k, *W);
  Matrix fwd(*W, 3, 3);
  fwd(0, 0) = k;
  fwd(1, 1) = l1[0];
  fwd(1, 2) = l1[1];
  fwd(2, 1) = l2[0];
  fwd(2, 2) = l2[1];
  auto inv = inverse(fwd);
  if (!inv) throw_integrity("tangent directions coincide");
  T = T.embed(*W) * *inv;

  MultiPoly g = current();
  auto coef = [&](const MultiPoly& p, int e0, int e1, int e2) {
    Monomial m{};
    m[0] = static_cast<std::uint16_t>(e0);
    m[1] = static_cast<std::uint16_t>(e1);
    m[2] = static_cast<std::uint16_t>(e2);
    return p.coeff(m);
  };
  Matrix shift = Matrix::identity(*W, 3);
  shift(0, 1) = -coef(g, 0, 2, 1);
  shift(0, 2) = -coef(g, 0, 1, 2);
  T = T * shift;
  g = current();
  Scalar a0 = coef(g, 0, 3, 0), a3 = coef(g, 0, 0, 3);
  if (a0.is_zero() || a3.is_zero()) throw_integrity("node and cubic part share a direction");
  Scalar lam = root_extending(UPoly(*W, {-a0.inverse(), W->zero(), W->zero(), W->one()}), W, K, ext_cap);
  Scalar mu = root_extending(UPoly(*W, {-embed(a3, *W).inverse(), W->zero(), W->zero(), W->one()}), W, K, ext_cap);
  lam = embed(lam, *W);
  Matrix scale(*W, 3, 3);
  scale(0, 0) = (lam * mu).inverse();
  scale(1, 1) = lam;
  scale(2, 2) = mu;
  T = T.embed(*W) * scale;
  g = current();
  if (!(g == normal_cubic(*W, 3))) throw_integrity("normal form check failed: " + g.to_string());
  TangentSectionNormalForm nf{T, BinaryForm(*W, {W->zero(), W->one(), W->zero()}),
                              BinaryForm(*W, {W->one(), W->zero(), W->zero(), W->one()}),
                              std::nullopt, std::nullopt, std::nullopt, rel(*W, K)};
  return nf;
}

TangentSectionNormalForm surface_normal_form(const MultiPoly& f, const Hyperplane& plane, const ProjPoint& x,
                                             unsigned ext_cap) {
  require_cubic(f);
  if (f.nvars() != 4) throw_input("expected a cubic surface");
  PlaneSection ps = plane_section(f, plane);
  auto nf = nodal_normal_form(ps.cubic, ps.to_plane(x.embed(larger(x.field(), plane.field()))), ext_cap);
  const Field& W = nf.field();
  Matrix ct = ps.chart.embed(W) * nf.change;
  Matrix change(W, 4, 4);
  unsigned piv = 0;
  while (std::find(ps.plane_vars.begin(), ps.plane_vars.end(), piv) != ps.plane_vars.end()) ++piv;
  for (unsigned i = 0; i < 4; ++i)
    for (unsigned j = 0; j < 3; ++j) change(i, j) = ct(i, j);
  change(piv, 3) = W.one();
  MultiPoly g = linear_substitute(f.embed(W), change);
  MultiPolyBuilder parts[4] = {{W, 3}, {W, 3}, {W, 3}, {W, 3}};
  for (const auto& t : g.terms()) {
    Monomial m = t.mono;
    unsigned e = m[3];
    m[3] = 0;
    parts[e].add(m, t.coeff);
  }
  if (!(parts[0].build() == normal_cubic(W, 3))) throw_integrity("surface normal form: wrong plane part");
  nf.change = change;
  nf.Q = parts[1].build();
  nf.L = parts[2].build();
  MultiPoly a = parts[3].build();
  nf.A = a.is_zero() ? W.zero() : a.terms().front().coeff;
  Monomial m0{};
  m0[0] = 2;
  if (nf.Q->coeff(m0).is_zero()) throw_integrity("Q(1,0,0) = 0: surface singular at the node");
  nf.ext_degree = rel(W, f.field());
  return nf;
}

TangentSectionNormalForm normal_form_surface(const MultiPoly& Q, const MultiPoly& L, const Scalar& A) {
  const Field& F = Q.field();
  TangentSectionNormalForm nf{Matrix::identity(F, 4), BinaryForm(F, {F.zero(), F.one(), F.zero()}),
                              BinaryForm(F, {F.one(), F.zero(), F.zero(), F.one()}),
                              Q, L, A, 1};
  return nf;
}

MonadP1 pullback_tangent(const MultiPoly& f, const CurveMap& h) {
  if (h.size() != f.nvars()) throw_input("curve has " + std::to_string(h.size()) + " components, expected " +
                                         std::to_string(f.nvars()));
  const int d = h[0].degree();
  if (d < 1) throw_input("curve is constant");
  for (const auto& c : h)
    if (c.degree() != d) throw_input("curve components have different degrees");
  const Field& W = h[0].field();
  MultiPoly fw = f.embed(larger(W, f.field()));
  if (!compose_with_curve(fw, h).is_zero()) throw_input("curve does not lie on the hypersurface");
  MonadP1 m;
  m.field = &W;
  m.a = 0;
  m.b.assign(h.size(), d);
  m.c = f.total_degree() * d;
  m.alpha = h;
  m.beta = gradient_on(fw, h);
  auto rep = validate_monad(m);
  if (!rep.ok) {
    std::string s;
    for (const auto& v : rep.violations) s += (s.empty() ? "" : "; ") + v;
    throw_verification("pullback monad invalid: " + s);
  }
  return m;
}

VeryFreeResult very_free(const MultiPoly& f, const CurveMap& h) {
  auto s = splitting_type(pullback_tangent(f, h));
  return {is_very_free_splitting(s), s};
}

bool equal_mod_euler(const Vec& a, const Vec& b, const CurveMap& h) {
  Vec d;
  for (std::size_t i = 0; i < a.size(); ++i) d.push_back(a[i] - b[i]);
  std::optional<LaurentForm> lambda;
  for (std::size_t i = 0; i < h.size() && !lambda; ++i)
    if (!h[i].is_zero()) {
      auto l = d[i].divide(h[i]);
      if (!l) return false;
      lambda = *l;
    }
  if (!lambda) return false;
  for (std::size_t i = 0; i < h.size(); ++i)
    if (!(d[i] == *lambda * LaurentForm::from_binary(h[i]))) return false;
  return true;
}

VerificationReport verify_xi_eta(const TangentSectionNormalForm& nf) {
  VerificationReport rep;
  MultiPoly f = nf.surface();
  const Field& F = f.field();
  CurveMap h = standard_nodal_parametrization(F);
  h.push_back(BinaryForm(F, 3));
  rep.add("curve on surface", "f(h) = 0", compose_with_curve(f, h).is_zero());
  auto beta = gradient_on(f, h);

  Vec xi_a{lm(F, 1, 2, -4), lm(F, -1, 1, -3), lm(F, -1, 0, -2), LaurentForm(F, -2)};
  Vec xi_b{lm(F, 1, -4, 2), lm(F, -1, -2, 0), lm(F, -1, -3, 1), LaurentForm(F, -2)};
  Vec eta_a{lm(F, 1, 1, -2), lm(F, -1, 0, -1), LaurentForm(F, -1), LaurentForm(F, -1)};
  Vec eta_b{lm(F, -1, -2, 1), LaurentForm(F, -1), lm(F, 1, -1, 0), LaurentForm(F, -1)};
  rep.add("xi charts agree modulo Euler", "xi = U^2/V^4 d0 - U/V^3 d1 - 1/V^2 d2", equal_mod_euler(xi_a, xi_b, h),
          "second chart V^2/U^4 d0 - 1/U^2 d1 - V/U^3 d2 (coefficient of d1 must have degree -2, so -1/U^3 "
          "is read as -1/U^2)");
  rep.add("eta charts agree modulo Euler", "eta = U/V^2 d0 - 1/V d1 = -V/U^2 d0 + 1/U d2",
          equal_mod_euler(eta_a, eta_b, h));

  LaurentForm xf = dot(xi_a, beta);
  LaurentForm want_x = lm(F, -1, 2, 2);
  rep.add("xi.f", "xi.f = -U^2 V^2", xf == want_x && dot(xi_b, beta) == want_x, "xi.f = " + xf.to_string());

  LaurentForm ef = dot(eta_a, beta);
  bool support = ef.terms().size() == 2 && ef.terms().count(4) && ef.terms().count(1);
  bool units = support;
  std::string signs;
  if (support)
    for (int u : {4, 1}) {
      const Scalar& s = ef.terms().at(u);
      units = units && (s.is_one() || (-s).is_one());
    }
  bool printed = ef == lm(F, -1, 4, 1) + lm(F, -1, 1, 4);
  rep.add("eta.f support and unit coefficients", "eta.f = -U^4 V - U V^4", support && units && dot(eta_b, beta) == ef,
          "eta.f = " + ef.to_string() + (printed ? " (signs as printed)" : " (sign differs from -U^4 V - U V^4)"));

  BinaryForm q_on = compose_with_curve(*nf.Q, {h[0], h[1], h[2]});
  rep.add("d3 f", "d3 f = Q(-U^3-V^3, U^2 V, U V^2)", beta[3] == q_on, "d3 f = " + beta[3].to_string());

  MonadP1 m = pullback_tangent(f, h);
  int g3 = h0_twist(m, -3);
  rep.add("no sections of h*T_X(-3)", "Gamma((h*T_X)(-3)) = 0", g3 == 0, "h0 = " + std::to_string(g3));
  auto s = splitting_type(m);
  rep.add("splitting", "d1 = 2 and d2 = 1", s == SplittingType{{2, 1}}, s.to_string());

  LaurentForm uv = lm(F, 1, 1, 1), u3 = lm(F, 1, 3, 0), v3 = lm(F, 1, 0, 3);
  Vec gen;
  for (std::size_t i = 0; i < 4; ++i) gen.push_back(uv * eta_a[i] - u3 * xi_a[i] + v3 * xi_a[i]);
  Vec g1{lm(F, -3, -1, 2), lm(F, 1, 1, 0), lm(F, 2, 0, 1), LaurentForm(F, 1)};
  Vec g2{lm(F, 3, 2, -1), lm(F, -2, 1, 0), lm(F, -1, 0, 1), LaurentForm(F, 1)};
  bool e1 = equal_mod_euler(gen, g1, h), e2 = equal_mod_euler(gen, g2, h);
  bool tangent = dot(gen, beta).is_zero();
  rep.add("generator of O(2)", "UV eta - U^3 xi + V^3 xi = 3U^2/V d0 - 2U d1 - V d2", e2 && tangent,
          "UV eta - U^3 xi + V^3 xi = " + vec_string(gen) +
              (e1 ? "; also equals -3V^2/U d0 + U d1 + 2V d2" : "; differs from -3V^2/U d0 + U d1 + 2V d2 modulo Euler"));
  return rep;
}

VerificationReport verify_cuspidal_delta(const Field& F, const Scalar& alpha) {
  const bool char3 = F.characteristic() == 3;
  if (char3 && alpha.is_zero()) throw_input("char 3 needs alpha != 0 in c = X1^3 + alpha X1^2 X2");
  const Scalar al = embed(alpha, F);
  VerificationReport rep;
  MultiPoly cub = parse_poly("X0*X2^2+X1^3", 4, F);
  if (char3) cub = cub + parse_poly("X1^2*X2", 4, F) * al;
  const char* qs[] = {"X0^2", "X0^2+X1*X2", "X0^2+X1^2", "X0^2+X2^2", "X0^2+X0*X1+X2^2"};
  const char* ls[] = {"0", "X1", "X0", "X2"};
  std::optional<MultiPoly> f;
  for (const char* qx : qs) {
    for (const char* lx : ls)
      for (int a : {0, 1}) {
        MultiPoly cand = cub + parse_poly(qx, 4, F) * parse_poly("X3", 4, F) +
                         parse_poly("X3^2", 4, F) * parse_poly(lx, 4, F, false) + parse_poly("X3^3", 4, F) * F.from_int(a);
        if (is_smooth(cand)) {
          f = cand;
          break;
        }
      }
    if (f) break;
  }
  if (!f) throw_integrity("no smooth surface through the cuspidal cubic among the candidates");
  rep.add("smooth ambient surface", "X smooth", true, f->to_string());

  BinaryForm c = compose_with_curve(cub.specialize(3, F.zero()),
                                    {BinaryForm(F, 1), parse_binary_form("U", F), parse_binary_form("V", F),
                                     BinaryForm(F, 1)});
  CurveMap h{-c, parse_binary_form("U*V^2", F), parse_binary_form("V^3", F), BinaryForm(F, 3)};
  rep.add("curve on surface", "f(h) = 0", compose_with_curve(*f, h).is_zero(),
          "h = (" + h[0].to_string() + ", " + h[1].to_string() + ", " + h[2].to_string() + ", 0)");
  auto beta = gradient_on(*f, h);
  Vec da, db;
  if (!char3) {
    da = {lm(F, 3, 2, -2), lm(F, -1, 0, 0), LaurentForm(F, 0), LaurentForm(F, 0)};
    db = {LaurentForm(F, 0), lm(F, 2, 0, 0), lm(F, 3, -1, 1), LaurentForm(F, 0)};
  } else {
    da = {LaurentForm::monomial(-al, 1, -1), lm(F, -1, 0, 0), LaurentForm(F, 0), LaurentForm(F, 0)};
    db = {LaurentForm::monomial(al * al, 0, 0), lm(F, -1, 0, 0) + LaurentForm::monomial(-al, -1, 1),
          LaurentForm::monomial(-al, -2, 2), LaurentForm(F, 0)};
  }
  rep.add("delta charts agree modulo Euler", char3 ? "delta = -alpha U/V d0 - d1" : "delta = 3U^2/V^2 d0 - d1 = 2 d1 + 3V/U d2",
          equal_mod_euler(da, db, h), "delta = " + vec_string(da) + " = " + vec_string(db));
  LaurentForm df = dot(da, beta);
  rep.add("delta.f = 0", "delta in Gamma((h*T_X)(-3))", df.is_zero(), "delta.f = " + df.to_string());
  MonadP1 m = pullback_tangent(*f, h);
  // in char 2 the normalization of the cusp is ramified to order 2 there, so T_P1 contributes O(4)
  const bool char2 = F.characteristic() == 2;
  const SplittingType expected = char2 ? SplittingType{{4, -1}} : SplittingType{{3, 0}};
  const int top = expected.parts[0];
  int g3 = h0_twist(m, -3), gt = h0_twist(m, -top), gt1 = h0_twist(m, -top - 1);
  rep.add("delta gives a section of h*T_X(-3)", "delta in Gamma((h*T_X)(-3))", g3 >= 1, "h0(-3) = " + std::to_string(g3));
  rep.add("top summand", "Gamma((h*T_X)(-4)) = 0", gt == 1 && gt1 == 0,
          "h0(" + std::to_string(-top) + ") = " + std::to_string(gt) + ", h0(" + std::to_string(-top - 1) +
              ") = " + std::to_string(gt1));
  auto s = splitting_type(m);
  rep.add("splitting", "h*T_X = O(3) + O", s == expected,
          s.to_string() + (char2 ? " (char 2: tangent map vanishes to order 2 at the cusp)" : ""));
  rep.add("not very free", "not very free", !is_very_free_splitting(s));
  return rep;
}

SixPointResult six_point_diagonal(const std::vector<ProjPoint>& pts_in) {
  if (pts_in.size() != 6) throw_input("need six points");
  const Field* Wp = &pts_in[0].field();
  for (const auto& p : pts_in) {
    if (p.size() != 3) throw_input("points must lie in P^2");
    Wp = &larger(*Wp, p.field());
  }
  const Field& W = *Wp;
  std::vector<std::vector<Scalar>> P;
  for (const auto& p : pts_in) P.push_back(p.embed(W).coords);
  SixPointResult res;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j)
      for (int k = j + 1; k < 6; ++k)
        if (det(Matrix::from_rows(W, {P[i], P[j], P[k]})).is_zero())
          throw_input("points " + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) +
                      " are collinear");
  auto conic_row = [&](const std::vector<Scalar>& x) {
    return std::vector<Scalar>{x[0] * x[0], x[1] * x[1], x[2] * x[2], x[0] * x[1], x[0] * x[2], x[1] * x[2]};
  };
  std::vector<std::vector<Scalar>> rows;
  for (const auto& p : P) rows.push_back(conic_row(p));
  if (det(Matrix::from_rows(W, rows)).is_zero()) throw_input("the six points lie on a conic");
  res.certificate.push_back("no three collinear (20 determinants nonzero)");
  res.certificate.push_back("not on a conic (6x6 determinant nonzero)");

  std::vector<std::pair<int, int>> pairs;
  std::vector<std::vector<Scalar>> lines;
  for (int i = 0; i < 6; ++i)
    for (int j = i + 1; j < 6; ++j) {
      pairs.push_back({i, j});
      lines.push_back(cross(P[i], P[j]));
    }
  std::vector<std::vector<Scalar>> conics;
  for (int skip = 0; skip < 6; ++skip) {
    std::vector<std::vector<Scalar>> r;
    for (int i = 0; i < 6; ++i)
      if (i != skip) r.push_back(conic_row(P[i]));
    auto ker = kernel(Matrix::from_rows(W, r));
    if (ker.size() != 1) throw_integrity("five points in general position must fix one conic");
    conics.push_back(ker[0]);
  }
  auto valid = [&](const ProjPoint& q, std::string& why) {
    for (int i = 0; i < 6; ++i)
      if (make_point(P[i]) == q) {
        why = "equals P" + std::to_string(i);
        return false;
      }
    int on = 0;
    for (const auto& l : lines)
      if (dot3(l, q.coords).is_zero()) ++on;
    if (on != 2) {
      why = "on " + std::to_string(on) + " connecting lines";
      return false;
    }
    auto row = conic_row(q.coords);
    for (int s = 0; s < 6; ++s) {
      Scalar v = W.zero();
      for (int t = 0; t < 6; ++t) v += conics[s][t] * row[t];
      if (v.is_zero()) {
        why = "on the conic through the points other than P" + std::to_string(s);
        return false;
      }
    }
    why = "on exactly two connecting lines, off the six conics";
    return true;
  };
  auto meet = [&](int a, int b, int c, int d) { return make_point(cross(cross(P[a], P[b]), cross(P[c], P[d]))); };
  res.diagonals = {meet(0, 1, 2, 3), meet(0, 2, 1, 3), meet(0, 3, 1, 2)};
  auto l45 = cross(P[4], P[5]);
  res.diagonals_on_p4p5 = true;
  for (const auto& d : res.diagonals) {
    bool on = dot3(l45, d.coords).is_zero();
    res.certificate.push_back("diagonal point " + d.to_string() + (on ? " lies on" : " is off") + " P4P5");
    if (on) continue;
    res.diagonals_on_p4p5 = false;
    std::string why;
    bool ok = valid(d, why);
    res.certificate.push_back("  " + d.to_string() + ": " + why);
    if (ok && !res.q) {
      res.q = d;
      res.fast_path = true;
    }
  }
  if (res.q) return res;
  std::set<ProjPoint> cands;
  for (std::size_t x = 0; x < pairs.size(); ++x)
    for (std::size_t y = x + 1; y < pairs.size(); ++y) {
      auto [a, b] = pairs[x];
      auto [c, d] = pairs[y];
      if (a == c || a == d || b == c || b == d) continue;
      cands.insert(meet(a, b, c, d));
    }
  std::size_t rejected = 0;
  for (const auto& q : cands) {
    std::string why;
    if (valid(q, why)) {
      res.q = q;
      res.certificate.push_back("fallback candidate " + q.to_string() + ": " + why);
      return res;
    }
    ++rejected;
  }
  res.certificate.push_back("no valid point among " + std::to_string(cands.size()) +
                            " intersection points of disjoint connecting lines (" + std::to_string(rejected) +
                            " rejected)");
  return res;
}

NodalSection find_nodal_section(const MultiPoly& f, const LineCensus& census, unsigned ext_cap) {
  require_cubic(f);
  if (census.lines.size() != 27) throw_input("line census must contain 27 lines");
  auto ec = eckardt_points(census);
  if (ec.two_line.empty())
    throw_verification("all intersection points are Eckardt (" + std::to_string(ec.eckardt.size()) +
                       " Eckardt points, " + std::to_string(ec.incident_pairs) + " incident pairs)");
  const Field& W0 = *census.field;
  unsigned tried = 0;
  for (unsigned k = 1; k <= ext_cap; ++k) {
    const Field& W = W0.extension(k);
    MultiPoly fw = f.embed(W);
    for (const auto& z0 : ec.two_line) {
      ProjPoint z = z0.embed(W);
      for (const auto& line0 : census.lines) {
        if (!line0.contains(z0)) continue;
        LineP3 D{line0.basis.embed(W)};
        for (std::uint64_t t = 0; t <= W.size_u64(); ++t) {
          ProjPoint y = line_point(D.basis, t);
          if (y == z) continue;
          ++tried;
          Hyperplane hy = tangent_hyperplane(fw, y);
          PlaneSection sy = plane_section(fw, hy);
          auto cy = classify_plane_cubic(sy.cubic);
          if (cy.tag != CubicClass::LineConicTransverse) continue;
          auto p0 = sy.to_plane(make_point(D.basis.row(0)));
          auto p1 = sy.to_plane(make_point(D.basis.row(1)));
          auto dplane = cross(p0.coords, p1.coords);
          std::optional<NodalSection> found;
          for_each_cubic_point(sy.cubic, [&](const ProjPoint& yp) {
            if (dot3(dplane, yp.coords).is_zero()) return false;
            ProjPoint x = sy.to_ambient(yp);
            ++tried;
            Hyperplane hx = tangent_hyperplane(fw, x);
            PlaneSection sx = plane_section(fw, hx);
            auto cx = classify_plane_cubic(sx.cubic);
            if (cx.tag != CubicClass::NodalIntegral || !same_point(*cx.singular_point, sx.to_plane(x))) return false;
            found = NodalSection{z, y, x, D, hx, sx, cx, tried};
            return true;
          });
          if (found) return *found;
        }
      }
    }
  }
  throw_budget("no nodal tangent section found within extension cap " + std::to_string(ext_cap));
}

MultiPoly fermat_cubic(const Field& F, unsigned nvars) {
  MultiPoly f(F, nvars);
  for (unsigned i = 0; i < nvars; ++i) f += MultiPoly::variable(F, nvars, i).pow(3);
  return f;
}

CurveMap fermat_char2_curve() {
  const Field& F = Field::finite(2);
  return {parse_binary_form("U^3+U^2*V", F), parse_binary_form("U^3+U^2*V+V^3", F),
          parse_binary_form("U^2*V+V^3", F), parse_binary_form("U*V^2", F)};
}

namespace {

CurveMap curve_from_nodal_section(const NodalSection& ns) {
  ProjPoint y = ns.section.to_plane(ns.x);
  LocalForm lf = local_form_at(ns.section.cubic, y);
  const Field& W = lf.q.field();
  BinaryForm u = parse_binary_form("U", W), v = parse_binary_form("V", W);
  CurveMap local{-lf.c, u * lf.q, v * lf.q};
  return map_curve(ns.section.chart.embed(W) * lf.move, local);
}

std::vector<Hyperplane> hyperplane_candidates(const Field& K, unsigned nv, std::optional<std::uint64_t> seed,
                                              std::size_t limit) {
  std::vector<Hyperplane> out;
  std::uint64_t q = K.size_u64();
  if (seed) {
    std::mt19937_64 rng(*seed);
    std::uniform_int_distribution<std::uint64_t> d(0, q - 1);
    while (out.size() < limit) {
      std::vector<Scalar> c;
      for (unsigned i = 0; i < nv; ++i) c.push_back(K.element(d(rng)));
      if (std::all_of(c.begin(), c.end(), [](const Scalar& s) { return s.is_zero(); })) continue;
      out.push_back(make_point(c));
    }
    return out;
  }
  for (int lead = static_cast<int>(nv) - 1; lead >= 0 && out.size() < limit; --lead) {
    unsigned free = nv - 1 - static_cast<unsigned>(lead);
    std::vector<std::uint64_t> idx(free, 0);
    for (;;) {
      std::vector<Scalar> c(nv, K.zero());
      c[static_cast<unsigned>(lead)] = K.one();
      for (unsigned t = 0; t < free; ++t) c[static_cast<unsigned>(lead) + 1 + t] = K.element(idx[t]);
      out.push_back(ProjPoint{c});
      if (out.size() >= limit) break;
      int t = static_cast<int>(free) - 1;
      while (t >= 0 && ++idx[static_cast<unsigned>(t)] == q) idx[static_cast<unsigned>(t--)] = 0;
      if (t < 0) break;
    }
  }
  return out;
}

}  // namespace

CurveOnX build_very_free_curve(const MultiPoly& f, unsigned ext_cap, std::optional<std::uint64_t> seed) {
  require_cubic(f);
  const unsigned n = f.nvars() - 1;
  if (n < 3) throw_input("need a cubic hypersurface in P^n with n >= 3");
  if (!f.field().is_finite()) throw_input("curve building needs a finite field");
  if (!is_smooth(f)) throw_input("hypersurface is not smooth");
  CurveOnX out{f, {}, {}, 0, "", {}};
  if (n == 3) {
    auto census = lines_on_cubic_surface(f);
    try {
      auto ns = find_nodal_section(f, census, ext_cap);
      out.h = curve_from_nodal_section(ns);
      out.method = "nodal tangent section at " + ns.x.to_string();
    } catch (const Error& e) {
      bool fermat2 = f.field().characteristic() == 2 && f == fermat_cubic(f.field());
      if (e.kind() != ErrorKind::Verification || !fermat2) throw;
      out.h.clear();
      for (const auto& c : fermat_char2_curve()) out.h.push_back(c.embed(f.field()));
      out.method = "explicit non-planar curve (no nodal tangent section: " + std::string(e.what()) + ")";
    }
  } else {
    bool found = false;
    for (const auto& H : hyperplane_candidates(f.field(), n + 1, seed, 20000)) {
      PlaneSection sec = plane_section(f, H);
      if (!is_smooth(sec.cubic)) continue;
      CurveOnX inner = build_very_free_curve(sec.cubic, ext_cap, seed);
      const Field& W = inner.h[0].field();
      out.h = map_curve(sec.chart.embed(W), inner.h);
      out.hyperplanes.push_back(H);
      for (const auto& h2 : inner.hyperplanes) out.hyperplanes.push_back(h2);
      out.method = "hyperplane section " + H.to_string() + "; " + inner.method;
      found = true;
      break;
    }
    if (!found) throw_budget("hyperplane search exhausted");
  }
  const Field& W = out.h[0].field();
  out.f = f.embed(W);
  auto vf = very_free(out.f, out.h);
  out.splitting = vf.splitting;
  out.anticanonical_degree = static_cast<int>(n - 2) * out.h[0].degree();
  if (!vf.very_free) throw_verification("constructed curve is not very free: splitting " + vf.splitting.to_string());
  return out;
}

Fermat2Report fermat_char2_report(unsigned k) {
  if (k < 1 || k > 6) throw_input("extension degree must be between 1 and 6");
  const Field& F2 = Field::finite(2);
  const Field& W = F2.extension(k);
  MultiPoly f = fermat_cubic(F2);
  MultiPoly fw = f.embed(W);
  Fermat2Report rep;
  rep.k = k;
  std::uint64_t q = W.size_u64();
  for (unsigned lead = 0; lead < 4; ++lead) {
    unsigned free = 3 - lead;
    std::uint64_t total = 1;
    for (unsigned t = 0; t < free; ++t) total *= q;
    for (std::uint64_t idx = 0; idx < total; ++idx) {
      std::vector<Scalar> x(4, W.zero());
      x[lead] = W.one();
      std::uint64_t r = idx;
      for (unsigned t = 0; t < free; ++t) {
        x[lead + 1 + t] = W.element(r % q);
        r /= q;
      }
      if (!fw.eval(x).is_zero()) continue;
      ++rep.points;
      ProjPoint p{x};
      auto cls = classify_plane_cubic(plane_section(fw, tangent_hyperplane(fw, p)).cubic);
      ++rep.frequencies[to_string(cls.tag)];
      if (cls.tag == CubicClass::ThreeLinesConcurrent) ++rep.concurrent_points;
      if (cls.tag != CubicClass::CuspidalIntegral && cls.tag != CubicClass::LineConicTangent &&
          cls.tag != CubicClass::ThreeLinesConcurrent && rep.trichotomy) {
        rep.trichotomy = false;
        rep.witness = p;
      }
    }
  }
  rep.lines = lines_on_cubic_surface(f, 2);
  rep.census = eckardt_points(rep.lines);
  mpz_class qw = W.order();
  for (const auto& e : rep.census.eckardt)
    if (std::all_of(e.coords.begin(), e.coords.end(), [&](const Scalar& s) { return s.pow(qw) == s; })) ++rep.rational_eckardt;
  return rep;
}

}  // namespace vfree
