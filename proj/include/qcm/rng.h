#ifndef QCM_RNG_H_
#define QCM_RNG_H_

#include <cstdint>
#include <limits>
#include <vector>

namespace qcm {

// SplitMix64 (Steele, Lea, Flood). Used to expand seeds.
class SplitMix64 {
 public:
  explicit SplitMix64(uint64_t state) : state_(state) {}
  uint64_t Next();

 private:
  uint64_t state_;
};

// xoshiro256** (Blackman, Vigna), seeded through SplitMix64. Output is
// identical on every platform, which std::mt19937 plus std::shuffle is not.
class Rng {
 public:
  using result_type = uint64_t;

  explicit Rng(uint64_t seed);

  // Independent stream for (master seed, index); used to split work.
  static Rng ForStream(uint64_t master_seed, uint64_t index);
  static uint64_t StreamSeed(uint64_t master_seed, uint64_t index);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() {
    return std::numeric_limits<result_type>::max();
  }
  result_type operator()() { return Next(); }

  uint64_t Next();
  // Uniform integer in [0, bound), bound > 0 (Lemire's method).
  uint64_t Below(uint64_t bound);
  // Uniform double in (0, 1].
  double UniformOpenClosed();
  // Uniform double in [0, 1).
  double Uniform();
  bool Bernoulli(double p) { return Uniform() < p; }

 private:
  uint64_t s_[4];
};

// Fisher-Yates with Rng::Below, so results do not depend on the C++ library.
std::vector<int> RandomPermutation(int n, Rng& rng);

template <typename T>
void Shuffle(std::vector<T>& items, Rng& rng) {
  for (size_t i = items.size(); i > 1; --i) {
    size_t j = rng.Below(i);
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace qcm

#endif  // QCM_RNG_H_
