#include "vfree/groebner.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <set>

#include "vfree/error.hpp"
#include "vfree/linalg.hpp"
#include "vfree/upoly.hpp"

namespace vfree {

namespace {

Monomial quotient(const Monomial& a, const Monomial& b) {
  Monomial m;
  for (std::size_t i = 0; i < kMaxVars; ++i) m[i] = static_cast<std::uint16_t>(a[i] - b[i]);
  return m;
}

bool coprime(const Monomial& a, const Monomial& b) {
  for (std::size_t i = 0; i < kMaxVars; ++i)
    if (a[i] && b[i]) return false;
  return true;
}

MultiPoly spoly(const MultiPoly& f, const MultiPoly& g) {
  const Monomial l = lcm(f.leading().mono, g.leading().mono);
  return f.mul_term(g.leading().coeff, quotient(l, f.leading().mono)) -
         g.mul_term(f.leading().coeff, quotient(l, g.leading().mono));
}

bool is_constant(const MultiPoly& p) { return !p.is_zero() && monomial_degree(p.leading().mono) == 0; }

}  // namespace

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis) {
  MultiPoly p = f;
  MultiPolyBuilder rem(f.field(), f.nvars());
  while (!p.is_zero()) {
    const Term& lt = p.leading();
    const MultiPoly* div = nullptr;
    for (const auto& g : basis) {
      if (!g.is_zero() && divides(g.leading().mono, lt.mono)) {
        div = &g;
        break;
      }
    }
    if (div) {
      const Scalar c = lt.coeff / div->leading().coeff;
      p = p - div->mul_term(c, quotient(lt.mono, div->leading().mono));
    } else {
      rem.add(lt.mono, lt.coeff);
      p = p - MultiPoly::monomial(lt.coeff, p.nvars(), lt.mono);
    }
  }
  return rem.build();
}

std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens) {
  std::vector<MultiPoly> G;
  for (const auto& g : gens)
    if (!g.is_zero()) G.push_back(g.monic());
  if (G.empty()) return G;
  const Field& F = G[0].field();
  const unsigned n = G[0].nvars();
  auto unit = [&] { return std::vector<MultiPoly>{MultiPoly::constant(F.one(), n)}; };
  for (const auto& g : G)
    if (is_constant(g)) return unit();

  struct Pair {
    std::size_t i, j;
    Monomial l;
  };
  auto pair_less = [](const Pair& a, const Pair& b) {
    const unsigned da = monomial_degree(a.l), db = monomial_degree(b.l);
    if (da != db) return da < db;
    if (a.l != b.l) return degrevlex_greater(b.l, a.l);
    if (a.j != b.j) return a.j < b.j;
    return a.i < b.i;
  };
  std::vector<Pair> pending;
  std::set<std::pair<std::size_t, std::size_t>> open;
  auto add_pairs = [&](std::size_t j) {
    for (std::size_t i = 0; i < j; ++i) {
      pending.push_back({i, j, lcm(G[i].leading().mono, G[j].leading().mono)});
      open.insert({i, j});
    }
  };
  for (std::size_t j = 1; j < G.size(); ++j) add_pairs(j);

  while (!pending.empty()) {
    auto it = std::min_element(pending.begin(), pending.end(), pair_less);
    const Pair pr = *it;
    pending.erase(it);
    open.erase({pr.i, pr.j});
    if (coprime(G[pr.i].leading().mono, G[pr.j].leading().mono)) continue;
    bool chain = false;
    for (std::size_t k = 0; k < G.size() && !chain; ++k) {
      if (k == pr.i || k == pr.j) continue;
      if (!divides(G[k].leading().mono, pr.l)) continue;
      auto key = [](std::size_t a, std::size_t b) { return a < b ? std::make_pair(a, b) : std::make_pair(b, a); };
      if (!open.count(key(pr.i, k)) && !open.count(key(pr.j, k))) chain = true;
    }
    if (chain) continue;
    MultiPoly r = normal_form(spoly(G[pr.i], G[pr.j]), G);
    if (r.is_zero()) continue;
    r = r.monic();
    if (is_constant(r)) return unit();
    G.push_back(std::move(r));
    add_pairs(G.size() - 1);
  }

  // Minimize, then inter-reduce.
  std::vector<MultiPoly> minimal;
  for (std::size_t i = 0; i < G.size(); ++i) {
    bool redundant = false;
    for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
      if (i == j) continue;
      if (divides(G[j].leading().mono, G[i].leading().mono) &&
          (G[j].leading().mono != G[i].leading().mono || j < i))
        redundant = true;
    }
    if (!redundant) minimal.push_back(G[i]);
  }
  std::vector<MultiPoly> reduced;
  for (std::size_t i = 0; i < minimal.size(); ++i) {
    std::vector<MultiPoly> others;
    for (std::size_t j = 0; j < minimal.size(); ++j)
      if (j != i) others.push_back(minimal[j]);
    const Term lt = minimal[i].leading();
    MultiPoly tail = minimal[i] - MultiPoly::monomial(lt.coeff, n, lt.mono);
    reduced.push_back((MultiPoly::monomial(lt.coeff, n, lt.mono) + normal_form(tail, others)).monic());
  }
  std::sort(reduced.begin(), reduced.end(), [](const MultiPoly& a, const MultiPoly& b) {
    return degrevlex_greater(a.leading().mono, b.leading().mono);
  });
  return reduced;
}

bool is_unit_ideal(const std::vector<MultiPoly>& gens) {
  auto g = groebner_basis(gens);
  return g.size() == 1 && is_constant(g[0]);
}

namespace {

bool zero_dim_from(const std::vector<MultiPoly>& basis, unsigned first) {
  if (basis.empty()) return false;
  const unsigned n = basis[0].nvars();
  for (unsigned v = first; v < n; ++v) {
    bool found = false;
    for (const auto& g : basis) {
      const Monomial& m = g.leading().mono;
      bool pure = m[v] > 0;
      for (unsigned k = 0; k < n && pure; ++k)
        if (k != v && m[k]) pure = false;
      if (pure || monomial_degree(m) == 0) {
        found = true;
        break;
      }
    }
    if (!found) return false;
  }
  return true;
}

// Standard monomials in the variables first..n-1 (earlier variables are absent from the basis).
std::vector<Monomial> standard_from(const std::vector<MultiPoly>& basis, unsigned first) {
  if (!zero_dim_from(basis, first)) throw_integrity("standard monomials of a positive-dimensional ideal");
  const unsigned n = basis[0].nvars();
  std::vector<Monomial> out;
  std::vector<Monomial> frontier{Monomial{}};
  std::set<Monomial> seen{Monomial{}};
  auto in_lt = [&](const Monomial& m) {
    for (const auto& g : basis)
      if (divides(g.leading().mono, m)) return true;
    return false;
  };
  while (!frontier.empty()) {
    std::vector<Monomial> next;
    for (const auto& m : frontier) {
      if (in_lt(m)) continue;
      out.push_back(m);
      for (unsigned v = first; v < n; ++v) {
        Monomial mm = m;
        ++mm[v];
        if (seen.insert(mm).second) next.push_back(mm);
      }
    }
    frontier = std::move(next);
  }
  std::sort(out.begin(), out.end(), [](const Monomial& a, const Monomial& b) { return degrevlex_greater(b, a); });
  return out;
}

}  // namespace

bool is_zero_dimensional(const std::vector<MultiPoly>& basis) { return zero_dim_from(basis, 0); }

std::vector<Monomial> standard_monomials(const std::vector<MultiPoly>& basis) {
  return standard_from(basis, 0);
}

namespace {

struct NeedExtension {
  unsigned degree;  // relative to the current working field
};

// Minimal polynomial of X_v on the quotient ring, by Krylov iteration on normal forms.
UPoly minimal_polynomial(const std::vector<MultiPoly>& G, unsigned v) {
  const Field& F = G[0].field();
  const unsigned n = G[0].nvars();
  const auto std_monos = standard_from(G, v);
  auto coords = [&](const MultiPoly& p) {
    std::vector<Scalar> c(std_monos.size(), F.zero());
    for (const auto& t : p.terms()) {
      auto it = std::find(std_monos.begin(), std_monos.end(), t.mono);
      if (it == std_monos.end()) throw_integrity("normal form outside the standard monomials");
      c[static_cast<std::size_t>(it - std_monos.begin())] = t.coeff;
    }
    return c;
  };
  const MultiPoly x = MultiPoly::variable(F, n, v);
  std::vector<std::vector<Scalar>> vecs;
  MultiPoly cur = normal_form(MultiPoly::constant(F.one(), n), G);
  for (std::size_t k = 0; k <= std_monos.size(); ++k) {
    vecs.push_back(coords(cur));
    Matrix m(F, std_monos.size(), vecs.size());
    for (std::size_t j = 0; j < vecs.size(); ++j)
      for (std::size_t i = 0; i < std_monos.size(); ++i) m(i, j) = vecs[j][i];
    auto ker = kernel(m);
    if (!ker.empty()) {
      std::vector<Scalar> c = ker[0];
      return UPoly(F, c).monic();
    }
    cur = normal_form(cur * x, G);
  }
  throw_integrity("minimal polynomial search failed");
}

void solve_rec(const std::vector<MultiPoly>& gens, unsigned v, std::vector<Scalar>& partial,
               std::vector<std::vector<Scalar>>& out) {
  const Field& W = gens[0].field();
  const unsigned n = gens[0].nvars();
  if (v == n) {
    for (const auto& g : gens)
      if (!g.is_zero()) return;
    out.push_back(partial);
    return;
  }
  auto G = groebner_basis(gens);
  if (G.empty()) throw_integrity("solver reached an empty ideal with free variables left");
  if (G.size() == 1 && is_constant(G[0])) return;
  if (!zero_dim_from(G, v)) throw_integrity("positive-dimensional branch");
  UPoly m = minimal_polynomial(G, v);
  const unsigned need = splitting_degree(m);
  if (need > 1) throw NeedExtension{need};
  for (const auto& r : roots_in_field(m)) {
    std::vector<MultiPoly> sub;
    for (const auto& g : G) {
      MultiPoly s = g.specialize(v, r);
      if (!s.is_zero()) sub.push_back(std::move(s));
    }
    partial.push_back(r);
    if (sub.empty()) {
      if (v + 1 != n) throw_integrity("solver lost constraints after specialization");
      out.push_back(partial);
    } else {
      solve_rec(sub, v + 1, partial, out);
    }
    partial.pop_back();
  }
  (void)W;
}

}  // namespace

AffineSolutions solve_affine(const std::vector<MultiPoly>& gens_in, unsigned max_ext, unsigned min_ext) {
  std::vector<MultiPoly> gens;
  for (const auto& g : gens_in)
    if (!g.is_zero()) gens.push_back(g);
  AffineSolutions res;
  if (gens.empty()) {
    if (gens_in.empty()) throw_input("solve_affine needs at least one generator");
    res.field = &gens_in[0].field();
    res.positive_dimensional = gens_in[0].nvars() > 0;
    return res;
  }
  const Field& K = gens[0].field();
  if (!K.is_finite()) throw_input("solve_affine works over finite fields");
  auto G = groebner_basis(gens);
  if (G.size() == 1 && is_constant(G[0])) {
    res.field = &K.extension(min_ext);
    return res;
  }
  if (!is_zero_dimensional(G)) {
    res.field = &K;
    res.positive_dimensional = true;
    return res;
  }
  unsigned e = min_ext;
  for (;;) {
    if (e > max_ext)
      throw_budget("extension cap " + std::to_string(max_ext) + " exceeded: need degree " + std::to_string(e));
    const Field& W = K.extension(e);
    std::vector<MultiPoly> gw;
    for (const auto& g : G) gw.push_back(g.embed(W));
    try {
      std::vector<Scalar> partial;
      std::vector<std::vector<Scalar>> pts;
      solve_rec(gw, 0, partial, pts);
      std::sort(pts.begin(), pts.end());
      res.field = &W;
      res.points = std::move(pts);
      return res;
    } catch (const NeedExtension& ne) {
      e *= ne.degree;
    }
  }
}

}  // namespace vfree
