#ifndef QCM_GOLDEN_H_
#define QCM_GOLDEN_H_

#include <optional>
#include <vector>

#include "qcm/lp_model.h"

namespace qcm {

// Published optimum of one LP instance. k is 0 for variants without it.
struct GoldenEntry {
  LpVariant variant;
  int n;
  int k;
  double value;
};

// Published values are rounded to five decimals.
inline constexpr double kGoldenTolerance = 5e-5;

const std::vector<GoldenEntry>& GoldenTable();

// nullopt when the pair was not published.
std::optional<double> GoldenValue(LpVariant variant, int n, int k = 0);

}  // namespace qcm

#endif  // QCM_GOLDEN_H_
