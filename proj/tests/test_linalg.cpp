#include <random>

#include "doctest.h"
#include "vfree/kernels.hpp"
#include "vfree/linalg.hpp"

using namespace vfree;

namespace {

Matrix random_matrix(const Field& F, std::size_t r, std::size_t c, std::mt19937_64& rng,
                     int zero_bias = 0) {
  Matrix m(F, r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j)
      m(i, j) = (zero_bias && rng() % zero_bias) ? F.zero() : F.element(rng() % F.size_u64());
  return m;
}

// Laplace expansion along the first row.
Scalar cofactor_det(const Matrix& m) {
  const std::size_t n = m.rows();
  if (n == 1) return m(0, 0);
  Scalar d = m.field().zero();
  for (std::size_t j = 0; j < n; ++j) {
    Matrix minor(m.field(), n - 1, n - 1);
    for (std::size_t i = 1; i < n; ++i)
      for (std::size_t k = 0, kk = 0; k < n; ++k)
        if (k != j) minor(i - 1, kk++) = m(i, k);
    Scalar t = m(0, j) * cofactor_det(minor);
    d = (j % 2) ? d - t : d + t;
  }
  return d;
}

}  // namespace

TEST_CASE("rref over prime field agrees with the generic path in an extension") {
  std::mt19937_64 rng(17);
  const Field& F = Field::finite(7);
  const Field& L = Field::finite(7, 2);
  for (int t = 0; t < 30; ++t) {
    Matrix a = random_matrix(F, 3 + rng() % 10, 3 + rng() % 12, rng, 3);
    Rref r1 = rref(a);
    Rref r2 = rref(a.embed(L));
    CHECK(r1.pivots == r2.pivots);
    CHECK(r1.m.embed(L) == r2.m);
  }
}

TEST_CASE("rref is identical under scalar and avx2 kernels") {
  std::mt19937_64 rng(23);
  const Field& F = Field::finite(65521);
  for (int t = 0; t < 10; ++t) {
    Matrix a = random_matrix(F, 20, 37, rng, 2);
    kernels::set_isa(kernels::Isa::Scalar);
    Rref r1 = rref(a);
    if (kernels::isa_supported(kernels::Isa::Avx2)) kernels::set_isa(kernels::Isa::Avx2);
    Rref r2 = rref(a);
    CHECK(r1.m == r2.m);
  }
}

TEST_CASE("kernel, solve, det, inverse") {
  std::mt19937_64 rng(29);
  for (const char* s : {"5", "2^3", "Q"}) {
    const Field& F = Field::parse(s);
    for (int t = 0; t < 15; ++t) {
      Matrix a(F, 4, 6);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 6; ++j)
          a(i, j) = F.is_rational() ? F.from_int(static_cast<long long>(rng() % 7) - 3)
                                    : F.element(rng() % F.size_u64());
      auto ker = kernel(a);
      CHECK(ker.size() + rank(a) == 6);
      for (auto& v : ker)
        for (auto& e : a.apply(v)) CHECK(e.is_zero());
      std::vector<Scalar> x0(6, F.zero());
      for (auto& e : x0) e = F.is_rational() ? F.from_int(static_cast<long long>(rng() % 5)) : F.element(rng() % F.size_u64());
      auto b = a.apply(x0);
      auto x = solve(a, b);
      REQUIRE(x.has_value());
      CHECK(a.apply(*x) == b);

      Matrix sq(F, 4, 4);
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) sq(i, j) = a(i, j);
      CHECK(det(sq) == cofactor_det(sq));
      auto inv = inverse(sq);
      CHECK(inv.has_value() == !det(sq).is_zero());
      if (inv) CHECK(sq * *inv == Matrix::identity(F, 4));
    }
  }
}
