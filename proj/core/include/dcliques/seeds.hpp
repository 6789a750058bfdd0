#pragma once

#include <cstdint>

namespace dcliques {

// splitmix64 finalizer (Steele, Lea & Flood). Used as the counter-based hash
// behind all seed derivation so that runs are reproducible from a single
// master seed, and so that another implementation of the same hash chain
// produces the same per-purpose seeds.
constexpr uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

enum class SeedPurpose : uint64_t {
  synthetic_train = 1,
  synthetic_test = 2,
  validation_split = 3,
  partition = 4,
  clique_construction = 5,
  topology_random = 6,
  node_stream = 7,
  regeneration = 8,
};

// derive_seed(master, p, i) = sm(sm(sm(master) ^ p) ^ i) with sm = splitmix64.
constexpr uint64_t derive_seed(uint64_t master, SeedPurpose purpose, uint64_t index = 0) {
  uint64_t h = splitmix64(master);
  h = splitmix64(h ^ static_cast<uint64_t>(purpose));
  h = splitmix64(h ^ index);
  return h;
}

}  // namespace dcliques
