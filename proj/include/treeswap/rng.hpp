#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <string_view>

namespace treeswap {

// Seeded random source with platform-independent output. The engine is
// mt19937_64, whose sequence is fixed by the standard; bounded draws use
// rejection rather than std::uniform_int_distribution, whose algorithm is
// implementation-defined.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  // Uniform integer in [0, n). n must be > 0.
  std::size_t below(std::size_t n);

  // Uniform real in [0, 1).
  double unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

// Stable substream seed from a global seed, a label and optional ids.
std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::initializer_list<std::uint64_t> ids = {});

}  // namespace treeswap
