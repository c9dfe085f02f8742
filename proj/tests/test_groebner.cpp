#include <random>

#include "doctest.h"
#include "vfree/groebner.hpp"

using namespace vfree;

namespace {

MultiPoly P(const char* s, unsigned n, const Field& F) { return parse_poly(s, n, F, false); }

// Every S-polynomial of the basis reduces to zero and no leading monomial divides another.
void check_reduced_gb(const std::vector<MultiPoly>& G) {
  for (std::size_t i = 0; i < G.size(); ++i)
    for (std::size_t j = 0; j < G.size(); ++j) {
      if (i == j) continue;
      CHECK_FALSE(divides(G[i].leading().mono, G[j].leading().mono));
      const Monomial l = lcm(G[i].leading().mono, G[j].leading().mono);
      Monomial qi, qj;
      for (std::size_t k = 0; k < kMaxVars; ++k) {
        qi[k] = static_cast<std::uint16_t>(l[k] - G[i].leading().mono[k]);
        qj[k] = static_cast<std::uint16_t>(l[k] - G[j].leading().mono[k]);
      }
      const Scalar one = G[i].field().one();
      MultiPoly s = G[i].mul_term(one, qi) - G[j].mul_term(one, qj);
      CHECK(normal_form(s, G).is_zero());
    }
}

}  // namespace

TEST_CASE("groebner examples") {
  const Field& Q = Field::rationals();
  auto g1 = groebner_basis({P("X0-1", 1, Q), P("X0", 1, Q)});
  REQUIRE(g1.size() == 1);
  CHECK(g1[0] == P("1", 1, Q));
  auto g2 = groebner_basis({P("X0^2", 2, Q), P("X0*X1+X1^2", 2, Q)});
  bool has_x1_cubed = false;
  for (auto& g : g2) has_x1_cubed |= g == P("X1^3", 2, Q);
  CHECK(has_x1_cubed);
  check_reduced_gb(g2);
  CHECK(is_unit_ideal({P("X0", 1, Q), P("X0-1", 1, Q)}));
  CHECK_FALSE(is_unit_ideal({P("X0", 2, Q), P("X1", 2, Q)}));
  CHECK(groebner_basis({}).empty());
}

TEST_CASE("Fermat over F7 has no singular point in the X0 = 1 chart") {
  const Field& F7 = Field::finite(7);
  auto f = parse_poly("X0^3+X1^3+X2^3+X3^3", 4, F7);
  std::vector<MultiPoly> ideal{f.specialize(0, F7.one())};
  for (auto& d : gradient(f)) ideal.push_back(d.specialize(0, F7.one()));
  CHECK(is_unit_ideal(ideal));
  // scan oracle: no affine point over F7 or F49 with all generators zero
  for (unsigned k : {1u, 2u}) {
    const Field& L = F7.extension(k);
    std::vector<MultiPoly> il;
    for (auto& g : ideal) il.push_back(g.embed(L));
    const std::uint64_t q = L.size_u64();
    bool found = false;
    for (std::uint64_t a = 0; a < q && !found; ++a)
      for (std::uint64_t b = 0; b < q && !found; ++b)
        for (std::uint64_t c = 0; c < q && !found; ++c) {
          std::vector<Scalar> x{L.one(), L.element(a), L.element(b), L.element(c)};
          bool all = true;
          for (auto& g : il) all = all && g.eval(x).is_zero();
          found = all;
        }
    CHECK_FALSE(found);
  }
}

TEST_CASE("random ideals: basis is reduced and generators reduce to zero") {
  std::mt19937_64 rng(61);
  for (const char* s : {"5", "2^2", "Q"}) {
    const Field& F = Field::parse(s);
    for (int t = 0; t < 10; ++t) {
      std::vector<MultiPoly> gens;
      for (int k = 0; k < 3; ++k) {
        MultiPolyBuilder b(F, 3);
        for (int term = 0; term < 4; ++term) {
          Monomial m{};
          for (int v = 0; v < 3; ++v) m[v] = static_cast<std::uint16_t>(rng() % 3);
          b.add(m, F.is_rational() ? F.from_int(static_cast<long long>(rng() % 7) - 3) : F.element(rng() % F.size_u64()));
        }
        gens.push_back(b.build());
      }
      auto G = groebner_basis(gens);
      check_reduced_gb(G);
      for (auto& g : gens) CHECK(normal_form(g, G).is_zero());
    }
  }
}

TEST_CASE("affine solver agrees with exhaustive scan") {
  std::mt19937_64 rng(67);
  const Field& F = Field::finite(3);
  int nonempty = 0;
  for (int t = 0; t < 25; ++t) {
    std::vector<MultiPoly> gens;
    for (int k = 0; k < 2; ++k) {
      MultiPolyBuilder b(F, 2);
      for (int term = 0; term < 4; ++term) {
        Monomial m{};
        m[0] = static_cast<std::uint16_t>(rng() % 3);
        m[1] = static_cast<std::uint16_t>(rng() % 3);
        b.add(m, F.element(rng() % 3));
      }
      gens.push_back(b.build());
    }
    AffineSolutions sol;
    try {
      sol = solve_affine(gens, 4);
    } catch (const std::exception&) {
      continue;  // needs more than degree 4
    }
    if (sol.positive_dimensional) continue;
    const Field& W = *sol.field;
    // oracle: scan W^2
    std::vector<std::vector<Scalar>> scan;
    std::vector<MultiPoly> gw;
    for (auto& g : gens) gw.push_back(g.embed(W));
    for (std::uint64_t a = 0; a < W.size_u64(); ++a)
      for (std::uint64_t b = 0; b < W.size_u64(); ++b) {
        std::vector<Scalar> x{W.element(a), W.element(b)};
        bool all = true;
        for (auto& g : gw) all = all && g.eval(x).is_zero();
        if (all) scan.push_back(x);
      }
    std::sort(scan.begin(), scan.end());
    CHECK(scan == sol.points);
    nonempty += !scan.empty();
  }
  CHECK(nonempty > 3);
}
