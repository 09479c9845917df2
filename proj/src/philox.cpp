#include "skewhowe/philox.hpp"

namespace skewhowe {

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
  auto out = Philox4x32::block({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                                0x5EED5EEDu, 0x0u},
                               Philox4x32::key_of(base));
  return static_cast<std::uint64_t>(out[0]) | (static_cast<std::uint64_t>(out[1]) << 32);
}

std::uint32_t PhiloxStream::next_u32() {
  if (pos_ == 4) {
    buf_ = Philox4x32::block({static_cast<std::uint32_t>(ctr_), static_cast<std::uint32_t>(ctr_ >> 32),
                              static_cast<std::uint32_t>(hi_), static_cast<std::uint32_t>(hi_ >> 32) ^ 0x80000000u},
                             key_);
    ++ctr_;
    pos_ = 0;
  }
  return buf_[pos_++];
}

double PhiloxStream::next_double() {
  std::uint64_t a = next_u32() >> 5, b = next_u32() >> 6;
  return (static_cast<double>(a) * 67108864.0 + static_cast<double>(b)) * (1.0 / 9007199254740992.0);
}

}  // namespace skewhowe
