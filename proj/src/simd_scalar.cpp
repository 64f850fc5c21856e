#include <array>
#include <cassert>
#include <vector>

#include "thinob/simd.hpp"

namespace thinob::simd {

namespace scalar {

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  assert(w.size() == f.size());
  // four interleaved partial sums, the lane order of the vector variant
  const std::size_t n = w.size();
  double lane[4] = {0.0, 0.0, 0.0, 0.0};
  std::size_t k = 0;
  for (; k + 4 <= n; k += 4) {
    for (std::size_t l = 0; l < 4; ++l) lane[l] += w[k + l] * f[k + l];
  }
  double s = (lane[0] + lane[1]) + (lane[2] + lane[3]);
  for (; k < n; ++k) s += w[k] * f[k];
  return s;
}

void eval_monomials(const MonomialTable& table, std::span<const double> x, std::span<const double> y,
                    std::span<double> out) {
  assert(x.size() == y.size() && x.size() == out.size());
  std::vector<double> px(static_cast<std::size_t>(table.max_ex) + 1);
  std::vector<double> py(static_cast<std::size_t>(table.max_ey) + 1);
  for (std::size_t k = 0; k < x.size(); ++k) {
    px[0] = 1.0;
    for (std::size_t i = 1; i < px.size(); ++i) px[i] = px[i - 1] * x[k];
    py[0] = 1.0;
    for (std::size_t j = 1; j < py.size(); ++j) py[j] = py[j - 1] * y[k];
    double s = 0.0;
    for (std::size_t t = 0; t < table.coeff.size(); ++t) {
      s += table.coeff[t] * px[static_cast<std::size_t>(table.ex[t])] * py[static_cast<std::size_t>(table.ey[t])];
    }
    out[k] = s;
  }
}

}  // namespace scalar

double pairwise_sum(std::span<const double> values) {
  if (values.empty()) return 0.0;
  if (values.size() <= 8) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace thinob::simd
