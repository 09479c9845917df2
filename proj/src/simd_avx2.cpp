// Compiled with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "skewhowe/philox.hpp"
#include "skewhowe/simd.hpp"

namespace skewhowe::avx2 {

namespace {

// Four Philox blocks at once, one per 64-bit lane; every lane holds a 32-bit word.
inline void philox4(__m256i& c0, __m256i& c1, __m256i& c2, __m256i& c3, std::uint32_t k0, std::uint32_t k1) {
  const __m256i m0 = _mm256_set1_epi64x(Philox4x32::M0);
  const __m256i m1 = _mm256_set1_epi64x(Philox4x32::M1);
  const __m256i lo = _mm256_set1_epi64x(0xFFFFFFFFll);
  for (int r = 0; r < 10; ++r) {
    __m256i p0 = _mm256_mul_epu32(c0, m0);
    __m256i p1 = _mm256_mul_epu32(c2, m1);
    __m256i kk0 = _mm256_set1_epi64x(k0), kk1 = _mm256_set1_epi64x(k1);
    __m256i n0 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p1, 32), c1), kk0);
    __m256i n2 = _mm256_xor_si256(_mm256_xor_si256(_mm256_srli_epi64(p0, 32), c3), kk1);
    c1 = _mm256_and_si256(p1, lo);
    c3 = _mm256_and_si256(p0, lo);
    c0 = n0;
    c2 = n2;
    k0 += Philox4x32::W0;
    k1 += Philox4x32::W1;
  }
}

}  // namespace

void bernoulli_fill(std::uint64_t seed, const std::uint64_t* thr, std::size_t count, std::uint8_t* out) {
  auto key = Philox4x32::key_of(seed);
  const __m256i lo = _mm256_set1_epi64x(0xFFFFFFFFll);
  const __m256i stride = _mm256_set_epi64x(12, 8, 4, 0);
  std::size_t full = count / 16 * 16;
  for (std::size_t base = 0; base < full; base += 16) {
    std::uint64_t b0 = base / 4;
    __m256i blk = _mm256_set_epi64x(static_cast<long long>(b0 + 3), static_cast<long long>(b0 + 2),
                                    static_cast<long long>(b0 + 1), static_cast<long long>(b0));
    __m256i c0 = _mm256_and_si256(blk, lo);
    __m256i c1 = _mm256_srli_epi64(blk, 32);
    __m256i c2 = _mm256_setzero_si256();
    __m256i c3 = _mm256_setzero_si256();
    philox4(c0, c1, c2, c3, key[0], key[1]);
    const __m256i words[4] = {c0, c1, c2, c3};
    for (int w = 0; w < 4; ++w) {
      __m256i t = _mm256_i64gather_epi64(reinterpret_cast<const long long*>(thr + base + w), stride, 8);
      int mask = _mm256_movemask_pd(_mm256_castsi256_pd(_mm256_cmpgt_epi64(t, words[w])));
      for (int l = 0; l < 4; ++l) out[base + 4 * l + w] = (mask >> l) & 1;
    }
  }
  for (std::size_t base = full; base < count; base += 4) {
    std::uint64_t blk = base / 4;
    auto w = Philox4x32::block({static_cast<std::uint32_t>(blk), static_cast<std::uint32_t>(blk >> 32), 0u, 0u}, key);
    for (std::size_t l = 0; l < 4 && base + l < count; ++l) out[base + l] = w[l] < thr[base + l];
  }
}

std::complex<double> cauchy_sum(std::complex<double> z, const double* wr, const double* wi, const double* gr,
                                const double* gi, std::size_t m) {
  const __m256d zr = _mm256_set1_pd(z.real()), zi = _mm256_set1_pd(z.imag());
  const __m256d one = _mm256_set1_pd(1.0);
  __m256d sr = _mm256_setzero_pd(), si = _mm256_setzero_pd();
  std::size_t b = 0;
  for (; b + 4 <= m; b += 4) {
    __m256d dr = _mm256_sub_pd(zr, _mm256_loadu_pd(wr + b));
    __m256d di = _mm256_sub_pd(zi, _mm256_loadu_pd(wi + b));
    __m256d inv = _mm256_div_pd(one, _mm256_fmadd_pd(dr, dr, _mm256_mul_pd(di, di)));
    __m256d a = _mm256_loadu_pd(gr + b), c = _mm256_loadu_pd(gi + b);
    sr = _mm256_fmadd_pd(_mm256_fmadd_pd(a, dr, _mm256_mul_pd(c, di)), inv, sr);
    si = _mm256_fmadd_pd(_mm256_fmsub_pd(c, dr, _mm256_mul_pd(a, di)), inv, si);
  }
  alignas(32) double r[4], i[4];
  _mm256_store_pd(r, sr);
  _mm256_store_pd(i, si);
  double tr = (r[0] + r[1]) + (r[2] + r[3]);
  double ti = (i[0] + i[1]) + (i[2] + i[3]);
  for (; b < m; ++b) {
    double dr = z.real() - wr[b], di = z.imag() - wi[b];
    double inv = 1.0 / (dr * dr + di * di);
    tr += (gr[b] * dr + gi[b] * di) * inv;
    ti += (gi[b] * dr - gr[b] * di) * inv;
  }
  return {tr, ti};
}

}  // namespace skewhowe::avx2
