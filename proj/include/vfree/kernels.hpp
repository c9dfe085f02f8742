#pragma once

// Data-parallel arithmetic kernels over prime fields F_p with p < 2^16.
//
// Each kernel has a portable scalar reference implementation and an AVX2
// implementation compiled with a target attribute. The active variant is
// chosen once at runtime from the CPU feature flags; setting the environment
// variable VFREE_FORCE_SCALAR=1 (or calling set_isa) pins the scalar path.
// Both variants produce bit-identical results.

#include <cstdint>
#include <span>
#include <string_view>

namespace vfree::kernels {

enum class Isa { Scalar, Avx2 };

Isa active_isa();
void set_isa(Isa isa);  // throws if the CPU lacks the requested ISA
bool isa_supported(Isa isa);
std::string_view isa_name(Isa isa);

// Largest modulus accepted by the kernels.
inline constexpr std::uint32_t kMaxModulus = 1u << 16;

// y[i] = (y[i] + a * x[i]) mod p. Inputs must already be reduced.
void axpy_mod(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t a,
              std::uint32_t p);
// out[i] = sum_j coeffs[j] * xs[i]^j mod p (coeffs low -> high).
void horner_mod(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                std::span<std::uint32_t> out, std::uint32_t p);

namespace scalar {
void axpy_mod(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t a,
              std::uint32_t p);
void horner_mod(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                std::span<std::uint32_t> out, std::uint32_t p);
}  // namespace scalar

namespace avx2 {
void axpy_mod(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t a,
              std::uint32_t p);
void horner_mod(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                std::span<std::uint32_t> out, std::uint32_t p);
}  // namespace avx2

}  // namespace vfree::kernels
