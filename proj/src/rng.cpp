#include "treeswap/rng.hpp"

#include <limits>

namespace treeswap {
namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

std::size_t Rng::below(std::size_t n) {
  const std::uint64_t bound = n;
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - (max % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x > limit);
  return static_cast<std::size_t>(x % bound);
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view label,
                          std::initializer_list<std::uint64_t> ids) {
  // FNV-1a over the label, then splitmix64 chaining.
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : label) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::uint64_t state = splitmix64(seed ^ splitmix64(h));
  for (std::uint64_t id : ids) state = splitmix64(state ^ splitmix64(id + 0x632be59bd9b4e019ULL));
  return state;
}

}  // namespace treeswap
