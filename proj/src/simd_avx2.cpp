#include <cassert>
#include <vector>

#include "thinob/simd.hpp"

#if defined(__x86_64__) || defined(_M_X64)
#include <immintrin.h>
#define THINOB_HAVE_X86 1
#else
#define THINOB_HAVE_X86 0
#endif

namespace thinob::simd::avx2 {

#if THINOB_HAVE_X86

__attribute__((target("avx2"))) double weighted_sum(std::span<const double> w, std::span<const double> f) {
  assert(w.size() == f.size());
  const std::size_t n = w.size();
  __m256d acc = _mm256_setzero_pd();
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(w.data() + k), _mm256_loadu_pd(f.data() + k));
    acc = _mm256_add_pd(acc, prod);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, acc);
  double s = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; k < n; ++k) s += w[k] * f[k];
  return s;
}

struct alignas(32) Lane {
  __m256d v;
};

__attribute__((target("avx2"))) void eval_monomials(const MonomialTable& table, std::span<const double> x,
                                                    std::span<const double> y, std::span<double> out) {
  assert(x.size() == y.size() && x.size() == out.size());
  const std::size_t n = x.size();
  std::vector<Lane> px(static_cast<std::size_t>(table.max_ex) + 1);
  std::vector<Lane> py(static_cast<std::size_t>(table.max_ey) + 1);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    const __m256d vx = _mm256_loadu_pd(x.data() + k);
    const __m256d vy = _mm256_loadu_pd(y.data() + k);
    px[0].v = one;
    for (std::size_t i = 1; i < px.size(); ++i) px[i].v = _mm256_mul_pd(px[i - 1].v, vx);
    py[0].v = one;
    for (std::size_t j = 1; j < py.size(); ++j) py[j].v = _mm256_mul_pd(py[j - 1].v, vy);
    __m256d s = _mm256_setzero_pd();
    for (std::size_t t = 0; t < table.coeff.size(); ++t) {
      const __m256d c = _mm256_set1_pd(table.coeff[t]);
      const __m256d term = _mm256_mul_pd(_mm256_mul_pd(c, px[static_cast<std::size_t>(table.ex[t])].v),
                                         py[static_cast<std::size_t>(table.ey[t])].v);
      s = _mm256_add_pd(s, term);
    }
    _mm256_storeu_pd(out.data() + k, s);
  }
  if (k < n) scalar::eval_monomials(table, x.subspan(k), y.subspan(k), out.subspan(k));
}

#else

double weighted_sum(std::span<const double> w, std::span<const double> f) { return scalar::weighted_sum(w, f); }

void eval_monomials(const MonomialTable& table, std::span<const double> x, std::span<const double> y,
                    std::span<double> out) {
  scalar::eval_monomials(table, x, y, out);
}

#endif

}  // namespace thinob::simd::avx2
