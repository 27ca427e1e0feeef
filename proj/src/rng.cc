#include "qcm/rng.h"

#include <numeric>

namespace qcm {
namespace {

uint64_t RotateLeft(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

uint64_t SplitMix64::Next() {
  uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Rng::Rng(uint64_t seed) {
  SplitMix64 mixer(seed);
  for (uint64_t& word : s_) word = mixer.Next();
}

uint64_t Rng::StreamSeed(uint64_t master_seed, uint64_t index) {
  SplitMix64 mixer(master_seed);
  uint64_t a = mixer.Next();
  SplitMix64 second(a ^ (index * 0xd1342543de82ef95ULL + 0x632be59bd9b4e019ULL));
  return second.Next();
}

Rng Rng::ForStream(uint64_t master_seed, uint64_t index) {
  return Rng(StreamSeed(master_seed, index));
}

uint64_t Rng::Next() {
  const uint64_t result = RotateLeft(s_[1] * 5, 7) * 9;
  const uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = RotateLeft(s_[3], 45);
  return result;
}

uint64_t Rng::Below(uint64_t bound) {
  __uint128_t m = static_cast<__uint128_t>(Next()) * bound;
  uint64_t low = static_cast<uint64_t>(m);
  if (low < bound) {
    const uint64_t threshold = -bound % bound;
    while (low < threshold) {
      m = static_cast<__uint128_t>(Next()) * bound;
      low = static_cast<uint64_t>(m);
    }
  }
  return static_cast<uint64_t>(m >> 64);
}

double Rng::UniformOpenClosed() {
  return static_cast<double>((Next() >> 11) + 1) * 0x1.0p-53;
}

double Rng::Uniform() { return static_cast<double>(Next() >> 11) * 0x1.0p-53; }

std::vector<int> RandomPermutation(int n, Rng& rng) {
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  Shuffle(perm, rng);
  return perm;
}

}  // namespace qcm
