#pragma once

#include <array>
#include <cstdint>

namespace skewhowe {

// Philox4x32-10 counter-based generator (Salmon et al. 2011).
struct Philox4x32 {
  using ctr_type = std::array<std::uint32_t, 4>;
  using key_type = std::array<std::uint32_t, 2>;

  static constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  static constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;

  static ctr_type block(ctr_type c, key_type k) {
    for (int r = 0; r < 10; ++r) {
      std::uint64_t p0 = static_cast<std::uint64_t>(M0) * c[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(M1) * c[2];
      c = {static_cast<std::uint32_t>(p1 >> 32) ^ c[1] ^ k[0], static_cast<std::uint32_t>(p1),
           static_cast<std::uint32_t>(p0 >> 32) ^ c[3] ^ k[1], static_cast<std::uint32_t>(p0)};
      k[0] += W0;
      k[1] += W1;
    }
    return c;
  }

  static key_type key_of(std::uint64_t seed) {
    return {static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)};
  }
};

// Seed for sample number `index` of a batch; independent of scheduling.
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

// Sequential stream of uniforms over one key, for non-hot-path use.
class PhiloxStream {
 public:
  explicit PhiloxStream(std::uint64_t seed, std::uint64_t stream = 0)
      : key_(Philox4x32::key_of(seed)), hi_(stream) {}

  std::uint32_t next_u32();
  double next_double();  // in [0, 1), 53 bits

 private:
  Philox4x32::key_type key_;
  std::uint64_t hi_;
  std::uint64_t ctr_ = 0;
  Philox4x32::ctr_type buf_{};
  int pos_ = 4;
};

}  // namespace skewhowe
