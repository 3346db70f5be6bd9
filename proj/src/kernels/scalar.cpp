#include "catfield/kernels.hpp"

namespace catfield::kernels::scalar {

namespace {

// Plain formula; std::complex operator* adds NaN recovery we never need.
inline void mul_add(double ar, double ai, double br, double bi, double& re, double& im) {
  re += ar * br - ai * bi;
  im += ar * bi + ai * br;
}

}  // namespace

void convolve(const ConvolutionIndex& index, std::span<const Complex> a, std::span<const Complex> b,
              std::span<Complex> out) {
  const std::size_t n = out.size();
  for (std::size_t k = 0; k < n; ++k) {
    double re = 0.0;
    double im = 0.0;
    for (Index j = index.offsets[k]; j < index.offsets[k + 1]; ++j) {
      const Complex x = a[index.left[j]];
      const Complex y = b[index.right[j]];
      mul_add(x.real(), x.imag(), y.real(), y.imag(), re, im);
    }
    out[k] = {re, im};
  }
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  double re = 0.0;
  double im = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mul_add(x[i].real(), x[i].imag(), y[i].real(), y[i].imag(), re, im);
  }
  return {re, im};
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  for (std::size_t i = 0; i < x.size(); ++i) {
    double re = y[i].real();
    double im = y[i].imag();
    mul_add(alpha.real(), alpha.imag(), x[i].real(), x[i].imag(), re, im);
    y[i] = {re, im};
  }
}

}  // namespace catfield::kernels::scalar
