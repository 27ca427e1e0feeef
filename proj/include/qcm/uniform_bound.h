#ifndef QCM_UNIFORM_BOUND_H_
#define QCM_UNIFORM_BOUND_H_

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "qcm/lp_model.h"

namespace qcm {

class MonotonicityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct UniformBoundReport {
  Rational weighted_sum;     // sum f*g*step
  Rational weight_total;     // sum g*step
  Rational min_suffix_mean;  // min over c of the mean of f on points >= c
  int argmin_suffix = 0;
  bool holds = false;        // weighted_sum >= weight_total * min_suffix_mean
};

// Discrete form of bounding a monotone-weighted integral by its worst tail
// average. f and g are sampled on a uniform grid with spacing `step`; g must
// be non-decreasing and nonnegative.
UniformBoundReport UniformBoundCheck(const std::vector<Rational>& f,
                                     const std::vector<Rational>& g, const Rational& step);

struct UniformBoundSweep {
  int64_t trials = 0;
  int64_t failures = 0;
  Rational tightest_gap;  // min of weighted_sum - weight_total*min_suffix_mean
};

// Random (f, g) pairs with small-denominator rational entries.
UniformBoundSweep RunUniformBoundTrials(int64_t trials, int points, uint64_t seed);

}  // namespace qcm

#endif  // QCM_UNIFORM_BOUND_H_
