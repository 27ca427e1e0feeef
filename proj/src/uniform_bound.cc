#include "qcm/uniform_bound.h"

#include "qcm/rng.h"

namespace qcm {

UniformBoundReport UniformBoundCheck(const std::vector<Rational>& f,
                                     const std::vector<Rational>& g, const Rational& step) {
  if (f.size() != g.size() || f.empty()) {
    throw std::invalid_argument("f and g need the same nonempty grid");
  }
  if (step <= 0) throw std::invalid_argument("grid step must be positive");
  for (size_t i = 0; i < g.size(); ++i) {
    if (g[i] < 0) throw MonotonicityError("weight is negative");
    if (i > 0 && g[i] < g[i - 1]) throw MonotonicityError("weight decreases");
  }
  UniformBoundReport r;
  for (size_t i = 0; i < f.size(); ++i) {
    r.weighted_sum += f[i] * g[i] * step;
    r.weight_total += g[i] * step;
  }
  Rational tail = 0;
  const int m = static_cast<int>(f.size());
  for (int c = m - 1; c >= 0; --c) {
    tail += f[c];
    Rational mean = tail / (m - c);
    if (c == m - 1 || mean <= r.min_suffix_mean) {
      r.min_suffix_mean = mean;
      r.argmin_suffix = c;
    }
  }
  r.holds = r.weighted_sum >= r.weight_total * r.min_suffix_mean;
  return r;
}

UniformBoundSweep RunUniformBoundTrials(int64_t trials, int points, uint64_t seed) {
  UniformBoundSweep sweep;
  const Rational step(1, points);
  for (int64_t t = 0; t < trials; ++t) {
    Rng rng = Rng::ForStream(seed, t);
    std::vector<Rational> f(points), g(points);
    Rational level = 0;
    for (int i = 0; i < points; ++i) {
      f[i] = Rational(static_cast<int64_t>(rng.Below(201)) - 100,
                      static_cast<int64_t>(rng.Below(16)) + 1);
      // Mostly flat with occasional jumps, so ties and plateaus both occur.
      if (rng.Below(4) == 0) level += Rational(static_cast<int64_t>(rng.Below(50)), 7);
      g[i] = level;
    }
    UniformBoundReport r = UniformBoundCheck(f, g, step);
    Rational gap = r.weighted_sum - r.weight_total * r.min_suffix_mean;
    if (t == 0 || gap < sweep.tightest_gap) sweep.tightest_gap = gap;
    ++sweep.trials;
    if (!r.holds) ++sweep.failures;
  }
  return sweep;
}

}  // namespace qcm
