#pragma once

#include <cstdint>
#include <vector>

namespace specden {

// splitmix64 finalizer, used for seeding and stream derivation.
inline uint64_t mix64(uint64_t z) {
  z += 0x9E3779B97F4A7C15ull;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

// Counter-seeded xoshiro256++ stream. Identical (seed, stream) yields an
// identical sequence on every platform; derive() spawns statistically
// independent substreams, so batched work is reproducible regardless of
// scheduling or thread count.
class RandomSource {
 public:
  RandomSource() : RandomSource(0, 0) {}
  explicit RandomSource(uint64_t seed, uint64_t stream = 0)
      : seed_(seed), stream_(stream) {
    uint64_t x = seed;
    x = mix64(x + 0x9E3779B97F4A7C15ull * (stream + 1));
    for (auto& w : s_) w = mix64(x += 0xA0761D6478BD642Full);
    if ((s_[0] | s_[1] | s_[2] | s_[3]) == 0) s_[0] = 1;
  }

  uint64_t seed() const { return seed_; }
  uint64_t stream() const { return stream_; }

  // Substream i of this stream; nested derivation forms a hash tree.
  RandomSource derive(uint64_t i) const {
    return RandomSource(seed_, mix64(stream_ + 0xD1B54A32D192ED03ull * (i + 1)));
  }

  uint64_t next_u64() {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  // Uniform in [0, 1), 53-bit resolution.
  double next_double() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  // Uniform integer in [0, n); unbiased via rejection.
  uint64_t next_below(uint64_t n) {
    const uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    uint64_t r;
    do {
      r = next_u64();
    } while (r >= limit);
    return r % n;
  }

  // Uniform 1-based vertex id in [1, n].
  int next_vertex(int n) { return static_cast<int>(next_below(static_cast<uint64_t>(n))) + 1; }

  bool next_coin() { return (next_u64() >> 63) != 0; }

 private:
  static uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

  uint64_t s_[4];
  uint64_t seed_;
  uint64_t stream_;
};

// Fisher-Yates shuffle driven by a RandomSource.
template <class T>
void shuffle(std::vector<T>& v, RandomSource& rng) {
  for (size_t i = v.size(); i > 1; --i) {
    std::swap(v[i - 1], v[rng.next_below(i)]);
  }
}

// Uniform permutation of 1..n; perm[i] is the image of i (index 0 unused).
inline std::vector<int> random_permutation(int n, RandomSource& rng) {
  std::vector<int> perm(static_cast<size_t>(n) + 1);
  for (int i = 1; i <= n; ++i) perm[i] = i;
  for (size_t i = static_cast<size_t>(n); i > 1; --i) {
    std::swap(perm[i], perm[1 + rng.next_below(i)]);
  }
  return perm;
}

}  // namespace specden
