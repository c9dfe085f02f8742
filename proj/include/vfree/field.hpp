#pragma once

// Exact scalar arithmetic over Q and finite fields F_{p^k}.
//
// Fields are interned: Field::finite(p, k) always returns the same object, so
// fields compare by address. A finite field element is stored as its
// coefficient vector (c_0, ..., c_{k-1}) in the basis 1, g, ..., g^{k-1} where
// g is the class of x modulo the field's modulus. The modulus is the
// lexicographically least monic irreducible polynomial of degree k, ordering
// candidates x^k + sum c_i x^i by the integer sum c_i p^i. The same integer,
// computed from an element's coefficients, is the element's canonical index
// and defines the canonical enumeration order.

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <boost/container/small_vector.hpp>
#include <gmpxx.h>

namespace vfree {

class Scalar;

class Field {
 public:
  static const Field& rationals();
  // p must be prime; k >= 1. Extension fields require p < 2^16.
  static const Field& finite(std::uint64_t p, unsigned k = 1);
  // "Q", "7", "2^4".
  static const Field& parse(std::string_view spec);

  Field(const Field&) = delete;
  Field& operator=(const Field&) = delete;

  bool is_rational() const { return p_ == 0; }
  bool is_finite() const { return p_ != 0; }
  bool is_prime_field() const { return p_ != 0 && k_ == 1; }
  std::uint64_t characteristic() const { return p_; }
  unsigned degree() const { return k_; }
  // Low-order coefficients of the monic modulus (length k); empty for prime fields and Q.
  const std::vector<std::uint32_t>& modulus() const { return modulus_; }
  // p^k; zero for Q.
  const mpz_class& order() const { return order_; }
  std::string spec() const;

  // F_{p^{k j}}.
  const Field& extension(unsigned j) const;
  // True when this field contains a copy of `sub` (same characteristic, degree divides).
  bool has_subfield(const Field& sub) const;

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long v) const;
  Scalar from_rational(const mpq_class& q) const;
  // Class of x modulo the modulus (equals 1 for prime fields; unavailable over Q).
  Scalar generator() const;
  // Element with the given canonical index; index < min(order, 2^64).
  Scalar element(std::uint64_t index) const;
  // Number of elements, saturated at UINT64_MAX.
  std::uint64_t size_u64() const;

 private:
  Field(std::uint64_t p, unsigned k, std::vector<std::uint32_t> modulus);

  std::uint64_t p_ = 0;
  unsigned k_ = 1;
  std::vector<std::uint32_t> modulus_;
  mpz_class order_;
};

class Scalar {
 public:
  using Digits = boost::container::small_vector<std::uint32_t, 12>;

  Scalar() = default;  // placeholder without a field; assign before use
  Scalar(const Field& f, Digits d);
  Scalar(const Field& f, mpq_class q);

  const Field& field() const { return *field_; }
  bool valid() const { return field_ != nullptr; }
  bool is_zero() const;
  bool is_one() const;

  const Digits& digits() const { return std::get<Digits>(v_); }
  const mpq_class& rational() const { return std::get<mpq_class>(v_); }
  // Canonical index (finite fields only); requires order < 2^64.
  std::uint64_t index() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& o);
  Scalar& operator-=(const Scalar& o);
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);
  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  Scalar inverse() const;
  Scalar pow(const mpz_class& e) const;
  Scalar pow(long long e) const { return pow(mpz_class(static_cast<long>(e))); }
  // x -> x^p (identity over Q).
  Scalar frobenius() const;
  // Inverse Frobenius: the unique y with y^p = x (finite fields).
  Scalar pth_root() const;

  friend bool operator==(const Scalar& a, const Scalar& b);
  // Canonical total order: by canonical index over F_q, numerically over Q.
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b);

  std::string to_string() const;

 private:
  const Field* field_ = nullptr;
  std::variant<Digits, mpq_class> v_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

// Deterministic field embedding F_{p^k} -> F_{p^m}, k | m. The source
// generator maps to the least root (canonical order) of the source modulus in
// the target; when an intermediate degree j (k | j | m) exists, the embedding
// factors through the smallest such j so towers compose consistently.
Scalar embed(const Scalar& x, const Field& target);
std::vector<Scalar> embed(const std::vector<Scalar>& xs, const Field& target);

bool is_probable_prime_u64(std::uint64_t n);

}  // namespace vfree
