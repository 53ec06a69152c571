#pragma once

#include <array>
#include <cstdint>
#include <utility>

#include "rmx/core.hpp"

namespace rmx {

// Philox4x32-10 block: a pure function of (key, counter).
std::array<std::uint32_t, 4> philox4x32(std::array<std::uint32_t, 4> counter, std::array<std::uint32_t, 2> key);

// Counter-based Gaussian source. Each (seed, stream, lane, index) maps to one
// pair of independent standard normals, so draws never depend on call order.
class CounterNormal {
 public:
  explicit CounterNormal(SeedSpec seed) : seed_(seed) {}
  std::pair<double, double> normal_pair(std::uint32_t lane, std::uint64_t index) const;
  std::pair<double, double> uniform_pair(std::uint32_t lane, std::uint64_t index) const;

 private:
  SeedSpec seed_;
};

}  // namespace rmx
