#include <atomic>
#include <cstdlib>
#include <string>

#include "thinob/simd.hpp"

namespace thinob::simd {

std::string_view to_string(Isa isa) { return isa == Isa::avx2 ? "avx2" : "scalar"; }

bool avx2_available() {
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

namespace {

Isa detect() {
  if (const char* env = std::getenv("THINOB_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return Isa::scalar;
    if (want == "avx2") return avx2_available() ? Isa::avx2 : Isa::scalar;
  }
  return avx2_available() ? Isa::avx2 : Isa::scalar;
}

std::atomic<Isa>& selected() {
  static std::atomic<Isa> isa{detect()};
  return isa;
}

}  // namespace

Isa active_isa() { return selected().load(std::memory_order_relaxed); }

void force_isa(Isa isa) {
  if (isa == Isa::avx2 && !avx2_available()) isa = Isa::scalar;
  selected().store(isa, std::memory_order_relaxed);
}

double weighted_sum(std::span<const double> w, std::span<const double> f) {
  return active_isa() == Isa::avx2 ? avx2::weighted_sum(w, f) : scalar::weighted_sum(w, f);
}

void eval_monomials(const MonomialTable& table, std::span<const double> x, std::span<const double> y,
                    std::span<double> out) {
  if (active_isa() == Isa::avx2) {
    avx2::eval_monomials(table, x, y, out);
  } else {
    scalar::eval_monomials(table, x, y, out);
  }
}

}  // namespace thinob::simd
