#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>

namespace skewhowe {

enum class SimdLevel { Scalar, Avx2 };

// Best level supported by the CPU, capped by SKEWHOWE_SIMD=scalar|avx2 when set.
SimdLevel detected_simd();
SimdLevel active_simd();
// Override for tests and benchmarks; returns false if the CPU lacks the level.
bool force_simd(SimdLevel level);
const char* simd_name(SimdLevel level);

// out[c] = (word c of the Philox stream keyed by seed) < thr[c], for c in [0, count).
// Word c is lane c % 4 of the block with counter c / 4. Thresholds are p * 2^32.
void bernoulli_fill(std::uint64_t seed, const std::uint64_t* thr, std::size_t count, std::uint8_t* out);

// sum_b (gr_b + i gi_b) / (z - (wr_b + i wi_b))
std::complex<double> cauchy_sum(std::complex<double> z, const double* wr, const double* wi, const double* gr,
                                 const double* gi, std::size_t m);

namespace scalar {
void bernoulli_fill(std::uint64_t seed, const std::uint64_t* thr, std::size_t count, std::uint8_t* out);
std::complex<double> cauchy_sum(std::complex<double> z, const double* wr, const double* wi, const double* gr,
                                const double* gi, std::size_t m);
}  // namespace scalar

namespace avx2 {
void bernoulli_fill(std::uint64_t seed, const std::uint64_t* thr, std::size_t count, std::uint8_t* out);
std::complex<double> cauchy_sum(std::complex<double> z, const double* wr, const double* wi, const double* gr,
                                const double* gi, std::size_t m);
}  // namespace avx2

}  // namespace skewhowe
