#pragma once

// Data-parallel inner loops used by quadrature and polynomial evaluation.
//
// Every kernel has a portable scalar reference in namespace `scalar` and, on
// x86-64, an AVX2 variant in namespace `avx2`. The unqualified entry points
// dispatch once at first use: AVX2 if the CPU reports it, scalar otherwise.
// THINOB_SIMD=scalar|avx2 in the environment overrides the choice.

#include <cstddef>
#include <span>
#include <string_view>

namespace thinob::simd {

enum class Isa { scalar, avx2 };

std::string_view to_string(Isa isa);

/// True when the running CPU can execute the AVX2 variants.
bool avx2_available();

/// ISA used by the dispatched entry points.
Isa active_isa();

/// Overrides dispatch for the rest of the process (tests and benchmarks).
/// Requesting avx2 on a CPU without it falls back to scalar.
void force_isa(Isa isa);

/// One monomial c * x^i * y^j of a bivariate polynomial.
struct MonomialTable {
  std::span<const int> ex;
  std::span<const int> ey;
  std::span<const double> coeff;
  int max_ex = 0;
  int max_ey = 0;
};

/// sum_k w[k] * f[k], accumulated in four interleaved lanes so that every
/// variant rounds identically.
double weighted_sum(std::span<const double> w, std::span<const double> f);

/// out[k] = sum_t coeff[t] * x[k]^ex[t] * y[k]^ey[t]. Powers are built by
/// repeated multiplication and terms are accumulated in table order, so the
/// scalar and AVX2 variants agree bit for bit.
void eval_monomials(const MonomialTable& table, std::span<const double> x, std::span<const double> y,
                    std::span<double> out);

/// Deterministic pairwise (tree) reduction; independent of ISA and thread count.
double pairwise_sum(std::span<const double> values);

namespace scalar {
double weighted_sum(std::span<const double> w, std::span<const double> f);
void eval_monomials(const MonomialTable& table, std::span<const double> x, std::span<const double> y,
                    std::span<double> out);
}  // namespace scalar

namespace avx2 {
double weighted_sum(std::span<const double> w, std::span<const double> f);
void eval_monomials(const MonomialTable& table, std::span<const double> x, std::span<const double> y,
                    std::span<double> out);
}  // namespace avx2

}  // namespace thinob::simd
