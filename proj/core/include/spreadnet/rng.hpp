#pragma once

#include <array>
#include <cmath>
#include <cstdint>

namespace spreadnet {

// 10-round Philox 4x32 counter-based generator. A block of four 32-bit
// words is produced from a 128-bit counter and a 64-bit key by pure
// arithmetic, so any draw can be located directly and streams keyed by
// (seed, stream, substream) never overlap or depend on call order.
struct Philox4x32 {
  using Block = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static Block generate(Block ctr, Key key) {
    constexpr std::uint32_t m0 = 0xD2511F53u, m1 = 0xCD9E8D57u;
    constexpr std::uint32_t w0 = 0x9E3779B9u, w1 = 0xBB67AE85u;
    for (int round = 0; round < 10; ++round) {
      std::uint64_t p0 = static_cast<std::uint64_t>(m0) * ctr[0];
      std::uint64_t p1 = static_cast<std::uint64_t>(m1) * ctr[2];
      Block next = {
          static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0],
          static_cast<std::uint32_t>(p1),
          static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1],
          static_cast<std::uint32_t>(p0),
      };
      ctr = next;
      key[0] += w0;
      key[1] += w1;
    }
    return ctr;
  }
};

// Buffered stream view over Philox blocks. The counter layout is
// {block_lo, block_hi, substream, stream}; the key carries the seed.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint32_t stream = 0,
                     std::uint32_t substream = 0)
      : key_{static_cast<std::uint32_t>(seed),
             static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream),
        substream_(substream) {}

  std::uint32_t next_u32() {
    if (pos_ == 4) refill();
    return buf_[pos_++];
  }

  std::uint64_t next_u64() {
    std::uint64_t lo = next_u32();
    std::uint64_t hi = next_u32();
    return (hi << 32) | lo;
  }

  // Uniform on [0, 1) with 53 random bits.
  double uniform01() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }

  double uniform(double a, double b) { return a + (b - a) * uniform01(); }

  // Unit-mean exponential.
  double exponential() { return -std::log1p(-uniform01()); }

 private:
  void refill() {
    buf_ = Philox4x32::generate(
        {static_cast<std::uint32_t>(block_),
         static_cast<std::uint32_t>(block_ >> 32), substream_, stream_},
        key_);
    ++block_;
    pos_ = 0;
  }

  Philox4x32::Key key_;
  std::uint32_t stream_;
  std::uint32_t substream_;
  std::uint64_t block_ = 0;
  Philox4x32::Block buf_{};
  int pos_ = 4;
};

}  // namespace spreadnet
