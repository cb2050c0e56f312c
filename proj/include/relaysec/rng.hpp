#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace relaysec {

// Philox4x32-10 (Salmon et al., SC'11). Stateless: output depends only on key and counter.
class Philox4x32 {
 public:
  using Block = std::array<std::uint32_t, 4>;

  explicit Philox4x32(std::uint64_t seed)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)} {}

  Block operator()(Block ctr) const {
    std::array<std::uint32_t, 2> k = key_;
    for (int round = 0; round < 10; ++round) {
      ctr = single_round(ctr, k);
      k[0] += 0x9E3779B9u;
      k[1] += 0xBB67AE85u;
    }
    return ctr;
  }

 private:
  static Block single_round(const Block& c, const std::array<std::uint32_t, 2>& k) {
    const std::uint64_t p0 = std::uint64_t{0xD2511F53u} * c[0];
    const std::uint64_t p1 = std::uint64_t{0xCD9E8D57u} * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }

  std::array<std::uint32_t, 2> key_;
};

// Sequential draws from one (seed, stream) substream. Draw i uses counter (i, stream).
class GaussianStream {
 public:
  GaussianStream(std::uint64_t seed, std::uint64_t stream) : gen_(seed), stream_(stream) {}

  // Circularly-symmetric complex Gaussian with E|z|^2 = variance.
  std::complex<double> complex_normal(double variance = 1.0) {
    const auto b = gen_({static_cast<std::uint32_t>(draw_), static_cast<std::uint32_t>(draw_ >> 32),
                         static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)});
    ++draw_;
    // 53-bit uniforms; u1 in (0,1] keeps the log finite
    const double u1 = (static_cast<double>(join(b[0], b[1]) >> 11) + 1.0) * 0x1.0p-53;
    const double u2 = static_cast<double>(join(b[2], b[3]) >> 11) * 0x1.0p-53;
    const double r = std::sqrt(-variance * std::log(u1));
    const double a = 2.0 * std::numbers::pi * u2;
    return {r * std::cos(a), r * std::sin(a)};
  }

  std::uint64_t draws() const { return draw_; }

 private:
  static std::uint64_t join(std::uint32_t lo, std::uint32_t hi) {
    return (std::uint64_t{hi} << 32) | lo;
  }

  Philox4x32 gen_;
  std::uint64_t stream_;
  std::uint64_t draw_ = 0;
};

}  // namespace relaysec
