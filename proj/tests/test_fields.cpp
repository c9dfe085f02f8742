#include <random>

#include "doctest.h"
#include "vfree/error.hpp"
#include "vfree/field.hpp"
#include "vfree/kernels.hpp"
#include "vfree/upoly.hpp"

using namespace vfree;

namespace {

// Exhaustive-factor irreducibility over F_p: no monic factor of degree 1..k/2.
bool brute_irreducible(std::vector<std::uint32_t> m, std::uint64_t p) {
  const std::size_t k = m.size();
  const Field& F = Field::finite(p);
  std::vector<Scalar> c;
  for (auto v : m) c.push_back(F.from_int(v));
  c.push_back(F.one());
  UPoly f(F, c);
  for (std::size_t d = 1; d <= k / 2; ++d) {
    std::vector<std::uint32_t> g(d, 0);
    for (;;) {
      std::vector<Scalar> gc;
      for (auto v : g) gc.push_back(F.from_int(v));
      gc.push_back(F.one());
      if ((f % UPoly(F, gc)).is_zero()) return false;
      std::size_t i = 0;
      while (i < d && ++g[i] == p) g[i++] = 0;
      if (i == d) break;
    }
  }
  return true;
}

Scalar random_element(const Field& F, std::mt19937_64& rng) {
  return F.element(rng() % F.size_u64());
}

}  // namespace

TEST_CASE("make_field basics and errors") {
  CHECK(Field::parse("7").size_u64() == 7);
  CHECK(Field::parse("Q").is_rational());
  CHECK(&Field::parse("2^4") == &Field::finite(2, 4));
  CHECK_THROWS_AS(Field::finite(6), Error);
  CHECK_THROWS_AS(Field::finite(7, 0), Error);
  CHECK_THROWS_AS(Field::parse("x"), Error);
}

TEST_CASE("modulus is the least irreducible in canonical order") {
  for (auto [p, k] : std::vector<std::pair<std::uint64_t, unsigned>>{{2, 4}, {2, 2}, {3, 2}, {2, 3}, {5, 3}, {7, 2}}) {
    const Field& F = Field::finite(p, k);
    const auto& m = F.modulus();
    CHECK(brute_irreducible(m, p));
    // every candidate before it is reducible
    std::vector<std::uint32_t> c(k, 0);
    while (c != m) {
      CHECK_FALSE(brute_irreducible(c, p));
      std::size_t i = 0;
      while (i < k && ++c[i] == p) c[i++] = 0;
    }
  }
  CHECK(Field::finite(2, 4).modulus() == std::vector<std::uint32_t>{1, 1, 0, 0});
}

TEST_CASE("field axioms and Frobenius") {
  std::mt19937_64 rng(11);
  for (const char* s : {"7", "2^4", "3^3", "5^2", "2^8", "7^3"}) {
    const Field& F = Field::parse(s);
    for (int t = 0; t < 40; ++t) {
      Scalar a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
      CHECK(a + b == b + a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a.pow(F.order()) == a);
      if (!a.is_zero()) CHECK((a * a.inverse()).is_one());
      CHECK(a.pth_root().pow(static_cast<long long>(F.characteristic())) == a);
    }
  }
  const Field& Q = Field::rationals();
  Scalar x = Q.from_rational(mpq_class(6, -4));
  CHECK(x.to_string() == "-3/2");
  CHECK((x * x.inverse()).is_one());
}

TEST_CASE("canonical index round trip and printing") {
  const Field& F = Field::finite(3, 2);
  for (std::uint64_t i = 0; i < 9; ++i) CHECK(F.element(i).index() == i);
  CHECK(F.element(7).to_string() == "2*g+1");
  CHECK(F.generator().to_string() == "g");
}

TEST_CASE("embedding") {
  const Field& F4 = Field::finite(2, 2);
  const Field& F16 = Field::finite(2, 4);
  const Field& F256 = Field::finite(2, 8);
  CHECK(embed(F4.one(), F16).is_one());
  Scalar g = embed(F4.generator(), F16);
  CHECK(g * g + g + F16.one() == F16.zero());
  // oracle: least root by scanning all 16 elements
  Scalar least;
  for (std::uint64_t i = 0; i < 16; ++i) {
    Scalar e = F16.element(i);
    if ((e * e + e + F16.one()).is_zero()) {
      least = e;
      break;
    }
  }
  CHECK(g == least);
  for (std::uint64_t i = 0; i < 4; ++i)
    for (std::uint64_t j = 0; j < 4; ++j) {
      Scalar a = F4.element(i), b = F4.element(j);
      CHECK(embed(a * b, F16) == embed(a, F16) * embed(b, F16));
      CHECK(embed(a + b, F16) == embed(a, F16) + embed(b, F16));
    }
  for (std::uint64_t i = 0; i < 4; ++i)
    CHECK(embed(embed(F4.element(i), F16), F256) == embed(F4.element(i), F256));
  for (std::uint64_t i = 0; i < 16; ++i) {
    Scalar a = F16.element(i);
    CHECK(embed(a * a, F256) == embed(a, F256) * embed(a, F256));
  }
  CHECK_THROWS_AS(embed(F16.one(), F4), Error);
  CHECK_THROWS_AS(embed(F4.one(), Field::finite(3, 2)), Error);
}

TEST_CASE("find_roots examples") {
  const Field& F7 = Field::finite(7);
  UPoly x = UPoly::x(F7);
  auto one = UPoly::constant(F7.one());
  auto r = find_roots(x * x - one, 1);
  REQUIRE(r.size() == 2);
  CHECK(r[0].value == F7.from_int(1));
  CHECK(r[1].value == F7.from_int(6));

  const Field& F3 = Field::finite(3);
  UPoly y = UPoly::x(F3);
  auto r2 = find_roots(y * y + UPoly::constant(F3.one()), 2);
  CHECK(r2.size() == 2);
  for (auto& rt : r2) {
    CHECK(rt.ext_degree == 2);
    CHECK(&rt.value.field() == &Field::finite(3, 2));
    CHECK((rt.value * rt.value + rt.value.field().one()).is_zero());
  }
  CHECK(find_roots(y * y + UPoly::constant(F3.one()), 1).empty());

  // x^3 - 2 over F7: oracle scans F7, F49, F343
  auto f = x * x * x - UPoly::constant(F7.from_int(2));
  unsigned minimal = 0;
  for (unsigned k = 1; k <= 3 && !minimal; ++k) {
    const Field& L = F7.extension(k);
    for (std::uint64_t i = 0; i < L.size_u64(); ++i) {
      Scalar e = L.element(i);
      if (e * e * e == L.from_int(2)) {
        minimal = k;
        break;
      }
    }
  }
  auto r3 = find_roots(f, 6);
  REQUIRE(r3.size() == 3);
  CHECK(r3[0].ext_degree == minimal);
}

TEST_CASE("find_roots agrees with scan_roots and reconstructs the polynomial") {
  std::mt19937_64 rng(5);
  for (const char* s : {"5", "2", "3", "2^2", "7"}) {
    const Field& F = Field::parse(s);
    for (int t = 0; t < 25; ++t) {
      int deg = 1 + static_cast<int>(rng() % 3);
      std::vector<Scalar> c;
      for (int i = 0; i < deg; ++i) c.push_back(random_element(F, rng));
      c.push_back(F.one());
      UPoly f(F, c);
      auto a = find_roots(f, 6);
      auto b = scan_roots(f, 6);
      REQUIRE(a.size() == b.size());
      for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].value == b[i].value);
        CHECK(a[i].multiplicity == b[i].multiplicity);
      }
      // product of (x - r)^m over the splitting field equals f
      unsigned l = splitting_degree(f);
      const Field& L = F.extension(l);
      UPoly prod = UPoly::constant(L.one());
      unsigned total = 0;
      for (auto& rt : a) {
        for (unsigned m = 0; m < rt.multiplicity; ++m) {
          prod = prod * (UPoly::x(L) - UPoly::constant(embed(rt.value, L)));
          ++total;
        }
      }
      CHECK(total == static_cast<unsigned>(deg));
      CHECK(prod == f.embed(L));
    }
  }
}

TEST_CASE("scan budget") {
  const Field& F = Field::finite(7);
  UPoly x = UPoly::x(F);
  CHECK_THROWS_WITH_AS(scan_roots(x * x * x - UPoly::constant(F.from_int(3)), 12),
                       doctest::Contains("scan budget exceeded"), Error);
}

TEST_CASE("radical handles p-th powers") {
  const Field& F = Field::finite(2, 2);
  UPoly x = UPoly::x(F);
  UPoly a = x + UPoly::constant(F.generator());
  UPoly f = a * a * a * a * (x + UPoly::constant(F.one()));
  CHECK(radical(f) == (a * (x + UPoly::constant(F.one()))).monic());
}

TEST_CASE("kernels: scalar and avx2 agree") {
  using namespace kernels;
  std::mt19937_64 rng(3);
  for (std::uint32_t p : {2u, 3u, 7u, 251u, 65521u, 65537u - 2u}) {
    if (!is_probable_prime_u64(p)) continue;
    for (std::size_t n : {0u, 1u, 7u, 8u, 9u, 33u, 1000u}) {
      std::vector<std::uint32_t> x(n), y(n);
      for (auto& v : x) v = static_cast<std::uint32_t>(rng() % p);
      for (auto& v : y) v = static_cast<std::uint32_t>(rng() % p);
      auto y2 = y;
      std::uint32_t a = static_cast<std::uint32_t>(rng() % p);
      scalar::axpy_mod(y, x, a, p);
      if (isa_supported(Isa::Avx2)) {
        avx2::axpy_mod(y2, x, a, p);
        CHECK(y == y2);
      }
      std::vector<std::uint32_t> coeffs(5);
      for (auto& v : coeffs) v = static_cast<std::uint32_t>(rng() % p);
      std::vector<std::uint32_t> o1(n), o2(n);
      scalar::horner_mod(coeffs, x, o1, p);
      if (isa_supported(Isa::Avx2)) {
        avx2::horner_mod(coeffs, x, o2, p);
        CHECK(o1 == o2);
      }
      std::vector<std::uint32_t> o3(n);
      horner_mod(coeffs, x, o3, p);
      CHECK(o3 == o1);
    }
  }
}
