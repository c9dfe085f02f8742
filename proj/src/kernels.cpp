#include "vfree/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace vfree::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa detect() {
  const char* force = std::getenv("VFREE_FORCE_SCALAR");
  if (force != nullptr && std::string(force) == "1") return Isa::Scalar;
  return cpu_has_avx2() ? Isa::Avx2 : Isa::Scalar;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return current().load(std::memory_order_relaxed); }

bool isa_supported(Isa isa) { return isa == Isa::Scalar || cpu_has_avx2(); }

void set_isa(Isa isa) {
  if (!isa_supported(isa)) throw std::runtime_error("requested ISA not supported by this CPU");
  current().store(isa, std::memory_order_relaxed);
}

std::string_view isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

void axpy_mod(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t a,
              std::uint32_t p) {
  if (active_isa() == Isa::Avx2)
    avx2::axpy_mod(y, x, a, p);
  else
    scalar::axpy_mod(y, x, a, p);
}

void horner_mod(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                std::span<std::uint32_t> out, std::uint32_t p) {
  if (active_isa() == Isa::Avx2)
    avx2::horner_mod(coeffs, xs, out, p);
  else
    scalar::horner_mod(coeffs, xs, out, p);
}

namespace scalar {

void axpy_mod(std::span<std::uint32_t> y, std::span<const std::uint32_t> x, std::uint32_t a,
              std::uint32_t p) {
  const std::size_t n = y.size();
  for (std::size_t i = 0; i < n; ++i)
    y[i] = static_cast<std::uint32_t>((y[i] + static_cast<std::uint64_t>(a) * x[i]) % p);
}

void horner_mod(std::span<const std::uint32_t> coeffs, std::span<const std::uint32_t> xs,
                std::span<std::uint32_t> out, std::uint32_t p) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = coeffs.size(); j-- > 0;) acc = (acc * xs[i] + coeffs[j]) % p;
    out[i] = static_cast<std::uint32_t>(acc);
  }
}

}  // namespace scalar

}  // namespace vfree::kernels
