#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "catfield/kernels.hpp"

namespace catfield::kernels {

namespace {

Isa detect() {
  Isa best = isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  if (const char* env = std::getenv("CATFIELD_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::Scalar;
    if (want == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
  }
  return best;
}

std::atomic<Isa>& current() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(CATFIELD_HAVE_AVX2_KERNELS) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Isa active_isa() { return current().load(std::memory_order_relaxed); }

void set_isa(Isa isa) {
  if (!isa_available(isa)) throw std::invalid_argument(std::string("ISA not available: ") + isa_name(isa));
  current().store(isa, std::memory_order_relaxed);
}

void convolve(const ConvolutionIndex& index, std::span<const Complex> a, std::span<const Complex> b,
              std::span<Complex> out) {
#if defined(CATFIELD_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::convolve(index, a, b, out);
#endif
  scalar::convolve(index, a, b, out);
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
#if defined(CATFIELD_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::dot(x, y);
#endif
  return scalar::dot(x, y);
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
#if defined(CATFIELD_HAVE_AVX2_KERNELS)
  if (active_isa() == Isa::Avx2) return avx2::axpy(alpha, x, y);
#endif
  scalar::axpy(alpha, x, y);
}

}  // namespace catfield::kernels
