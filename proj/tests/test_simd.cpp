#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "skewhowe/philox.hpp"
#include "skewhowe/simd.hpp"

using namespace skewhowe;

TEST_CASE("philox known answers") {
  using C = Philox4x32::ctr_type;
  CHECK(Philox4x32::block({0, 0, 0, 0}, {0, 0}) == C{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  CHECK(Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu}, {0xffffffffu, 0xffffffffu}) ==
        C{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  CHECK(Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u}, {0xa4093822u, 0x299f31d0u}) ==
        C{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("stream uniforms") {
  PhiloxStream s(42);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    double u = s.next_double();
    CHECK_FALSE((u < 0 || u >= 1));
    sum += u;
  }
  CHECK(sum / 100000 == doctest::Approx(0.5).epsilon(0.01));
  CHECK(derive_seed(1, 0) != derive_seed(1, 1));
  CHECK(derive_seed(1, 5) == derive_seed(1, 5));
  CHECK(derive_seed(2, 5) != derive_seed(1, 5));
}

TEST_CASE("bernoulli fill: avx2 is bit-identical to scalar") {
  if (!force_simd(SimdLevel::Avx2)) {
    MESSAGE("avx2 unavailable; equivalence test skipped");
    return;
  }
  std::mt19937_64 rng(1);
  for (std::size_t count : {1u, 3u, 15u, 16u, 17u, 100u, 80000u}) {
    std::vector<std::uint64_t> thr(count);
    for (auto& t : thr) t = rng() % (1ull << 33);
    thr[0] = 1ull << 32;
    std::vector<std::uint8_t> a(count), b(count);
    for (std::uint64_t seed : {0ull, 7ull, 0xdeadbeefcafef00dull}) {
      scalar::bernoulli_fill(seed, thr.data(), count, a.data());
      avx2::bernoulli_fill(seed, thr.data(), count, b.data());
      CHECK(a == b);
      CHECK(a[0] == 1);
    }
  }
  force_simd(detected_simd());
}

TEST_CASE("bernoulli fill matches the raw stream") {
  std::vector<std::uint64_t> thr(9, 1ull << 31);
  std::vector<std::uint8_t> out(9);
  bernoulli_fill(3, thr.data(), 9, out.data());
  for (std::size_t c = 0; c < 9; ++c) {
    auto w = Philox4x32::block({static_cast<std::uint32_t>(c / 4), 0, 0, 0}, Philox4x32::key_of(3));
    CHECK(out[c] == (w[c % 4] < (1u << 31)));
  }
}

TEST_CASE("cauchy sum: avx2 agrees with scalar") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> U(-1, 1);
  for (std::size_t m : {0u, 1u, 5u, 64u, 1001u}) {
    std::vector<double> wr(m), wi(m), gr(m), gi(m);
    for (std::size_t b = 0; b < m; ++b) wr[b] = U(rng), wi[b] = U(rng), gr[b] = U(rng), gi[b] = U(rng);
    std::complex<double> z(3.0, 0.5);
    auto a = scalar::cauchy_sum(z, wr.data(), wi.data(), gr.data(), gi.data(), m);
    std::complex<double> direct = 0;
    for (std::size_t b = 0; b < m; ++b) direct += std::complex<double>(gr[b], gi[b]) / (z - std::complex<double>(wr[b], wi[b]));
    CHECK(std::abs(a - direct) <= 1e-12 * (1 + std::abs(direct)));
    if (force_simd(SimdLevel::Avx2)) {
      auto b = avx2::cauchy_sum(z, wr.data(), wi.data(), gr.data(), gi.data(), m);
      CHECK(std::abs(a - b) <= 1e-12 * (1 + std::abs(a)));
    }
  }
  force_simd(detected_simd());
}

TEST_CASE("environment override") {
  setenv("SKEWHOWE_SIMD", "scalar", 1);
  CHECK(detected_simd() == SimdLevel::Scalar);
  unsetenv("SKEWHOWE_SIMD");
  CHECK(std::string(simd_name(SimdLevel::Avx2)) == "avx2");
}
