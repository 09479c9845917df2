#include <atomic>
#include <cstdlib>
#include <cstring>

#include "skewhowe/philox.hpp"
#include "skewhowe/simd.hpp"

namespace skewhowe {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

std::atomic<int> g_level{-1};

}  // namespace

SimdLevel detected_simd() {
  SimdLevel best = cpu_has_avx2() ? SimdLevel::Avx2 : SimdLevel::Scalar;
  if (const char* env = std::getenv("SKEWHOWE_SIMD")) {
    if (std::strcmp(env, "scalar") == 0) return SimdLevel::Scalar;
  }
  return best;
}

SimdLevel active_simd() {
  int v = g_level.load(std::memory_order_relaxed);
  if (v < 0) {
    v = static_cast<int>(detected_simd());
    g_level.store(v, std::memory_order_relaxed);
  }
  return static_cast<SimdLevel>(v);
}

bool force_simd(SimdLevel level) {
  if (level == SimdLevel::Avx2 && !cpu_has_avx2()) return false;
  g_level.store(static_cast<int>(level), std::memory_order_relaxed);
  return true;
}

const char* simd_name(SimdLevel level) { return level == SimdLevel::Avx2 ? "avx2" : "scalar"; }

void bernoulli_fill(std::uint64_t seed, const std::uint64_t* thr, std::size_t count, std::uint8_t* out) {
  if (active_simd() == SimdLevel::Avx2)
    avx2::bernoulli_fill(seed, thr, count, out);
  else
    scalar::bernoulli_fill(seed, thr, count, out);
}

std::complex<double> cauchy_sum(std::complex<double> z, const double* wr, const double* wi, const double* gr,
                                const double* gi, std::size_t m) {
  if (active_simd() == SimdLevel::Avx2) return avx2::cauchy_sum(z, wr, wi, gr, gi, m);
  return scalar::cauchy_sum(z, wr, wi, gr, gi, m);
}

namespace scalar {

void bernoulli_fill(std::uint64_t seed, const std::uint64_t* thr, std::size_t count, std::uint8_t* out) {
  auto key = Philox4x32::key_of(seed);
  for (std::size_t base = 0; base < count; base += 4) {
    std::uint64_t blk = base / 4;
    auto w = Philox4x32::block({static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32), 0u, 0u}, key);
    for (std::size_t l = 0; l < 4 && base + l < count; ++l) out[base + l] = w[l] < thr[base + l];
  }
}

std::complex<double> cauchy_sum(std::complex<double> z, const double* wr, const double* wi, const double* gr,
                                const double* gi, std::size_t m) {
  double sr = 0, si = 0;
  for (std::size_t b = 0; b < m; ++b) {
    double dr = z.real() - wr[b], di = z.imag() - wi[b];
    double inv = 1.0 / (dr * dr + di * di);
    sr += (gr[b] * dr + gi[b] * di) * inv;
    si += (gi[b] * dr - gr[b] * di) * inv;
  }
  return {sr, si};
}

}  // namespace scalar

}  // namespace skewhowe
