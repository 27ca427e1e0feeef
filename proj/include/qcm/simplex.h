#ifndef QCM_SIMPLEX_H_
#define QCM_SIMPLEX_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "qcm/lp_model.h"

namespace qcm {

enum class SolveStatus { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

const char* SolveStatusName(SolveStatus status);

enum class PivotRule {
  kBland,    // smallest eligible index; never cycles
  kDantzig,  // most negative reduced cost, Bland after degenerate stalls
};

struct SolveOptions {
  double feasibility_tol = 1e-9;
  int64_t max_iterations = 1'000'000;
  PivotRule pivot_rule = PivotRule::kBland;
};

struct Solution {
  SolveStatus status = SolveStatus::kIterationLimit;
  double objective = 0.0;
  std::vector<double> values;  // by variable index
  int64_t iterations = 0;

  std::map<std::string, double> Assignment(const LpModel& model) const;
};

// Two-phase dense simplex. The model's variables are free; the solver works
// on the dual (min b'y, A'y = c, y >= 0), whose tableau has one row per
// primal variable, and reads the primal solution off the reduced costs of
// the artificial columns.
Solution Solve(const LpModel& model, const SolveOptions& options = {});

}  // namespace qcm

#endif  // QCM_SIMPLEX_H_
