#include "rmx/random.hpp"

#include <cmath>

namespace rmx {

std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> ctr, std::array<std::uint32_t, 2> key) {
  constexpr std::uint32_t M0 = 0xD2511F53u, M1 = 0xCD9E8D57u;
  constexpr std::uint32_t W0 = 0x9E3779B9u, W1 = 0xBB67AE85u;
  for (int round = 0; round < 10; ++round) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(M0) * ctr[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(M1) * ctr[2];
    const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32), lo0 = static_cast<std::uint32_t>(p0);
    const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32), lo1 = static_cast<std::uint32_t>(p1);
    ctr = {hi1 ^ ctr[1] ^ key[0], lo1, hi0 ^ ctr[3] ^ key[1], lo0};
    key[0] += W0;
    key[1] += W1;
  }
  return ctr;
}

namespace {

// Stream id and lane are folded into the high counter words; the key is the master seed.
std::array<std::uint32_t, 4> block(SeedSpec s, std::uint32_t lane, std::uint64_t index) {
  const std::uint64_t hi = s.stream_id * 0x9E3779B97F4A7C15ull + lane;
  return philox4x32({static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32),
                     static_cast<std::uint32_t>(hi), static_cast<std::uint32_t>(hi >> 32) ^ (lane << 24)},
                    {static_cast<std::uint32_t>(s.master_seed), static_cast<std::uint32_t>(s.master_seed >> 32)});
}

// 53-bit uniform in the open interval (0,1).
double to_open_unit(std::uint32_t a, std::uint32_t b) {
  const std::uint64_t bits = ((static_cast<std::uint64_t>(a) << 32) | b) >> 11;
  return (static_cast<double>(bits) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::pair<double, double> CounterNormal::uniform_pair(std::uint32_t lane, std::uint64_t index) const {
  const auto r = block(seed_, lane, index);
  return {to_open_unit(r[0], r[1]), to_open_unit(r[2], r[3])};
}

std::pair<double, double> CounterNormal::normal_pair(std::uint32_t lane, std::uint64_t index) const {
  const auto [u1, u2] = uniform_pair(lane, index);
  const double rad = std::sqrt(-2.0 * std::log(u1));
  const double ang = 2.0 * pi * u2;
  return {rad * std::cos(ang), rad * std::sin(ang)};
}

}  // namespace rmx
