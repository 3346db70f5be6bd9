#pragma once

// Complex inner loops behind the category-algebra arithmetic. Each kernel has
// a scalar reference and an AVX2+FMA variant; the variant is chosen once at
// runtime from CPU features, overridable with CATFIELD_SIMD=scalar|avx2 or
// set_isa().

#include <complex>
#include <span>

#include "catfield/category.hpp"

namespace catfield::kernels {

using Complex = std::complex<double>;

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
Isa active_isa();
/// Throws std::invalid_argument if the CPU lacks `isa`.
void set_isa(Isa isa);

/// out[k] = sum over factorizations k = l∘r of a[l] * b[r]; `out` is overwritten.
void convolve(const ConvolutionIndex& index, std::span<const Complex> a, std::span<const Complex> b,
              std::span<Complex> out);
/// sum_i x[i] * y[i], no conjugation.
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
/// y += alpha * x
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);

namespace scalar {
void convolve(const ConvolutionIndex& index, std::span<const Complex> a, std::span<const Complex> b,
              std::span<Complex> out);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
#define CATFIELD_HAVE_AVX2_KERNELS 1
namespace avx2 {
void convolve(const ConvolutionIndex& index, std::span<const Complex> a, std::span<const Complex> b,
              std::span<Complex> out);
Complex dot(std::span<const Complex> x, std::span<const Complex> y);
void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y);
}  // namespace avx2
#endif

}  // namespace catfield::kernels
