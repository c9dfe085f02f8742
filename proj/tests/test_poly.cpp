#include <functional>
#include <random>

#include "doctest.h"
#include "vfree/error.hpp"
#include "vfree/poly.hpp"
#include "vfree/upoly.hpp"

using namespace vfree;

namespace {

Scalar rnd(const Field& F, std::mt19937_64& rng) {
  if (F.is_rational()) return F.from_rational(mpq_class(static_cast<long>(rng() % 11) - 5, 1 + rng() % 3));
  return F.element(rng() % F.size_u64());
}

MultiPoly random_form(const Field& F, unsigned n, unsigned d, std::mt19937_64& rng, int density = 2) {
  MultiPolyBuilder b(F, n);
  // all monomials of degree d
  std::vector<Monomial> ms;
  Monomial m{};
  std::function<void(unsigned, unsigned)> rec = [&](unsigned i, unsigned left) {
    if (i == n - 1) {
      m[i] = static_cast<std::uint16_t>(left);
      ms.push_back(m);
      return;
    }
    for (unsigned e = 0; e <= left; ++e) {
      m[i] = static_cast<std::uint16_t>(e);
      rec(i + 1, left - e);
    }
  };
  rec(0, d);
  for (auto& x : ms)
    if (rng() % density == 0) b.add(x, rnd(F, rng));
  return b.build();
}

BinaryForm bf(const char* s, const Field& F) { return parse_binary_form(s, F); }

}  // namespace

TEST_CASE("parse examples") {
  const Field& F7 = Field::finite(7);
  auto f = parse_poly("X0*X1*X2 + X1^3 + X2^3", 4, F7);
  CHECK(f.size() == 3);
  CHECK(f.total_degree() == 3);
  auto fermat = parse_poly("X0^3+X1^3+X2^3+X3^3", 4, Field::finite(2));
  CHECK(fermat.size() == 4);
  CHECK_THROWS_WITH_AS(parse_poly("X0+X1^2", 4, F7), doctest::Contains("inhomogeneous"), Error);
  CHECK_THROWS_WITH_AS(parse_poly("X0+X7", 4, F7), doctest::Contains("unknown variable"), Error);
  CHECK_THROWS_WITH_AS(parse_poly("X0 + * X1", 4, F7), doctest::Contains("position"), Error);
  CHECK_THROWS_AS(parse_poly("1/2*X0", 4, F7), Error);
  CHECK(parse_poly("-(X0 - 2*X1)", 2, Field::rationals()) ==
        parse_poly("2*X1 - X0", 2, Field::rationals()));
  CHECK(parse_poly("g*X0", 1, Field::finite(2, 2)).leading().coeff == Field::finite(2, 2).generator());
  CHECK(parse_poly("8*X0", 1, F7).leading().coeff.is_one());
}

TEST_CASE("parse and print round trip") {
  std::mt19937_64 rng(41);
  for (const char* s : {"Q", "7", "2^3", "3^2"}) {
    const Field& F = Field::parse(s);
    for (int t = 0; t < 50; ++t) {
      unsigned n = 1 + rng() % 4, d = rng() % 4;
      MultiPoly f = random_form(F, n, d, rng);
      CHECK(parse_poly(f.to_string(), n, F) == f);
    }
  }
}

TEST_CASE("partial derivatives and Euler identity") {
  const Field& Q = Field::rationals();
  auto f = parse_poly("X0*X1*X2 + X1^3", 3, Q);
  CHECK(partial_derivative(f, 1) == parse_poly("X0*X2 + 3*X1^2", 3, Q));
  CHECK(partial_derivative(parse_poly("X1^3", 3, Field::finite(3)), 1).is_zero());
  std::mt19937_64 rng(43);
  for (const char* s : {"7", "2", "3", "Q"}) {
    const Field& F = Field::parse(s);
    for (int t = 0; t < 20; ++t) {
      MultiPoly g = random_form(F, 4, 3, rng);
      MultiPoly lhs(F, 4);
      for (unsigned i = 0; i < 4; ++i) lhs += MultiPoly::variable(F, 4, i) * partial_derivative(g, i);
      CHECK(lhs == g * F.from_int(3));
    }
  }
}

TEST_CASE("linear substitution") {
  const Field& F5 = Field::finite(5);
  std::mt19937_64 rng(47);
  for (int t = 0; t < 10; ++t) {
    Matrix m(F5, 4, 4);
    do {
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) m(i, j) = F5.element(rng() % 5);
    } while (det(m).is_zero());
    MultiPoly f = random_form(F5, 4, 3, rng);
    CHECK(linear_substitute(linear_substitute(f, m), *inverse(m)) == f);
    CHECK(linear_substitute(f, Matrix::identity(F5, 4)) == f);
  }
  // X0 -> X0 + a1 X1 + a2 X2 on X0 X1 X2 + c kills the X1^2 X2 and X1 X2^2 terms.
  const Field& F7 = Field::finite(7);
  auto g = parse_poly("X0*X1*X2 + 2*X1^3 + 3*X1^2*X2 + 5*X1*X2^2 + X2^3", 3, F7);
  Matrix m = Matrix::identity(F7, 3);
  m(0, 1) = -F7.from_int(3);
  m(0, 2) = -F7.from_int(5);
  auto h = linear_substitute(g, m);
  CHECK(h == parse_poly("X0*X1*X2 + 2*X1^3 + X2^3", 3, F7));
  Matrix sing(F7, 3, 3);
  CHECK_THROWS_AS(linear_substitute(g, sing), Error);
}

TEST_CASE("compose_with_curve examples") {
  const Field& Q = Field::rationals();
  std::vector<BinaryForm> h{bf("-U^3-V^3", Q), bf("U^2*V", Q), bf("U*V^2", Q)};
  CHECK(compose_with_curve(parse_poly("X0*X1*X2 + X1^3 + X2^3", 3, Q), h).is_zero());
  CHECK(compose_with_curve(parse_poly("X1*X2", 3, Q), h) == bf("U^3*V^3", Q));
  const Field& F2 = Field::finite(2);
  std::vector<BinaryForm> h2{bf("U^3+U^2*V", F2), bf("U^3+U^2*V+V^3", F2), bf("U^2*V+V^3", F2),
                             bf("U*V^2", F2)};
  CHECK(compose_with_curve(parse_poly("X0^3+X1^3+X2^3+X3^3", 4, F2), h2).is_zero());
  std::vector<BinaryForm> bad{bf("U", Q), bf("U^2", Q), bf("V^2", Q)};
  CHECK_THROWS_AS(compose_with_curve(parse_poly("X0*X1*X2", 3, Q), bad), Error);
}

TEST_CASE("resultant and gcd examples") {
  const Field& Q = Field::rationals();
  Scalar r = resultant_bin(bf("U*V", Q), bf("U^3+V^3", Q));
  CHECK((r == Q.one() || r == -Q.one()));
  CHECK(resultant_bin(bf("U*V", Q), bf("U^3", Q)).is_zero());
  CHECK_FALSE(resultant_bin(bf("V^2", Q), bf("U^3", Q)).is_zero());
  CHECK(gcd_bin(bf("U^2*V", Q), bf("U*V^2", Q)) == bf("U*V", Q));
  const Field& F7 = Field::finite(7);
  CHECK(gcd_bin(bf("-U^3-V^3", F7), bf("U^2*V", F7)) == bf("1", F7));
  CHECK(gcd_bin(bf("3*U*V+V^2", F7), BinaryForm(F7, 0)) == bf("U*V+5*V^2", F7));
}

TEST_CASE("resultant, gcd and shared roots agree") {
  const Field& F5 = Field::finite(5);
  std::mt19937_64 rng(53);
  int shared = 0;
  for (int t = 0; t < 50; ++t) {
    int dq = 1 + rng() % 3, dc = 1 + rng() % 3;
    std::vector<Scalar> a, b;
    for (int i = 0; i <= dq; ++i) a.push_back(F5.element(rng() % 5));
    for (int i = 0; i <= dc; ++i) b.push_back(F5.element(rng() % 5));
    BinaryForm q(F5, a), c(F5, b);
    if (q.is_zero() || c.is_zero()) continue;
    if (t % 3 == 0) {  // force a common factor sometimes
      BinaryForm l(F5, std::vector<Scalar>{F5.element(rng() % 5), F5.one()});
      q = q * l;
      c = c * l;
    }
    const bool res0 = resultant_bin(q, c).is_zero();
    const bool gcd_nonconst = gcd_bin(q, c).degree() > 0;
    // roots: (1:0) when both leading U-coefficients vanish; else affine roots u of q(u,1), c(u,1)
    bool root = q.coeff(0).is_zero() && c.coeff(0).is_zero();
    auto deh = [&](const BinaryForm& f) {
      std::vector<Scalar> v;
      for (int k = 0; k <= f.degree(); ++k) v.push_back(f.coeff(f.degree() - k));
      return UPoly(F5, v);
    };
    UPoly uq = deh(q), uc = deh(c);
    if (!root && uq.degree() > 0 && uc.degree() > 0) {
      for (auto& rt : find_roots(uq, static_cast<unsigned>(dq * dc + 2))) {
        if (uc.embed(rt.value.field()).eval(rt.value).is_zero()) root = true;
      }
    }
    CHECK(res0 == gcd_nonconst);
    CHECK(res0 == root);
    shared += res0;
  }
  CHECK(shared > 5);
}

TEST_CASE("Laurent forms") {
  const Field& Q = Field::rationals();
  auto xi0 = LaurentForm::monomial(Q.one(), 2, -4);
  auto h = bf("U^2*V", Q);
  auto prod = xi0 * LaurentForm::from_binary(h);
  CHECK(prod == LaurentForm::monomial(Q.one(), 4, -3));
  auto back = prod.divide(h);
  REQUIRE(back.has_value());
  CHECK(*back == xi0);
  CHECK_FALSE(LaurentForm::from_binary(bf("U^3+V^3", Q)).divide(bf("U+2*V", Q)).has_value());
  CHECK(LaurentForm::from_binary(bf("U^3+V^3", Q)).divide(bf("U*V", Q)).has_value());
  CHECK((LaurentForm::monomial(Q.one(), 2, 1)).to_binary() == bf("U^2*V", Q));
  CHECK(LaurentForm::monomial(-Q.one(), 1, -3).to_string() == "-U/V^3");
}
