// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include "catfield/kernels.hpp"

#if defined(CATFIELD_HAVE_AVX2_KERNELS)

#include <immintrin.h>

namespace catfield::kernels::avx2 {

namespace {

// Two complex products per register: [a0*b0, a1*b1].
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);
  const __m256d a_im = _mm256_permute_pd(a, 0xF);
  const __m256d b_swap = _mm256_permute_pd(b, 0x5);
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_swap));
}

inline __m128d cmul128(__m128d a, __m128d b) {
  const __m128d a_re = _mm_movedup_pd(a);
  const __m128d a_im = _mm_permute_pd(a, 0x3);
  const __m128d b_swap = _mm_permute_pd(b, 0x1);
  return _mm_fmaddsub_pd(a_re, b, _mm_mul_pd(a_im, b_swap));
}

inline const double* raw(const Complex* p) { return reinterpret_cast<const double*>(p); }
inline double* raw(Complex* p) { return reinterpret_cast<double*>(p); }

inline __m256d load_pair(const Complex* base, Index i, Index j) {
  return _mm256_insertf128_pd(_mm256_castpd128_pd256(_mm_loadu_pd(raw(base + i))),
                              _mm_loadu_pd(raw(base + j)), 1);
}

inline __m128d fold(__m256d v) {
  return _mm_add_pd(_mm256_castpd256_pd128(v), _mm256_extractf128_pd(v, 1));
}

}  // namespace

void convolve(const ConvolutionIndex& index, std::span<const Complex> a, std::span<const Complex> b,
              std::span<Complex> out) {
  const Complex* pa = a.data();
  const Complex* pb = b.data();
  const Index* left = index.left.data();
  const Index* right = index.right.data();
  for (std::size_t k = 0; k < out.size(); ++k) {
    Index j = index.offsets[k];
    const Index end = index.offsets[k + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; j + 1 < end; j += 2) {
      acc = _mm256_add_pd(acc, cmul(load_pair(pa, left[j], left[j + 1]),
                                    load_pair(pb, right[j], right[j + 1])));
    }
    __m128d total = fold(acc);
    if (j < end) {
      total = _mm_add_pd(total, cmul128(_mm_loadu_pd(raw(pa + left[j])), _mm_loadu_pd(raw(pb + right[j]))));
    }
    _mm_storeu_pd(raw(out.data() + k), total);
  }
}

Complex dot(std::span<const Complex> x, std::span<const Complex> y) {
  const std::size_t n = x.size();
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(raw(x.data() + i)), _mm256_loadu_pd(raw(y.data() + i))));
    acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(raw(x.data() + i + 2)),
                                    _mm256_loadu_pd(raw(y.data() + i + 2))));
  }
  __m128d total = fold(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) {
    total = _mm_add_pd(total, cmul128(_mm_loadu_pd(raw(x.data() + i)), _mm_loadu_pd(raw(y.data() + i))));
  }
  alignas(16) double r[2];
  _mm_store_pd(r, total);
  return {r[0], r[1]};
}

void axpy(Complex alpha, std::span<const Complex> x, std::span<Complex> y) {
  const std::size_t n = x.size();
  const __m256d va = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d prod = cmul(va, _mm256_loadu_pd(raw(x.data() + i)));
    _mm256_storeu_pd(raw(y.data() + i), _mm256_add_pd(_mm256_loadu_pd(raw(y.data() + i)), prod));
  }
  if (i < n) {
    const __m128d prod = cmul128(_mm256_castpd256_pd128(va), _mm_loadu_pd(raw(x.data() + i)));
    _mm_storeu_pd(raw(y.data() + i), _mm_add_pd(_mm_loadu_pd(raw(y.data() + i)), prod));
  }
}

}  // namespace catfield::kernels::avx2

#endif
