#ifndef QCM_LP_FACTORY_H_
#define QCM_LP_FACTORY_H_

#include <stdexcept>

#include "qcm/lp_model.h"

namespace qcm {

class LpParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Discretized Ranking LP on an n-step grid. Variables g_i_j (1..n) and h_k_l
// (0..n); profile bounds G_*; per-rank bounds Gu_i; objective (1/n) sum Gu_i.
LpModel BuildRankingLp(int n);

// Ranking LP whose no-backup profiles get the extra compensation available
// from length-6 alternating paths (GT_* bounds).
LpModel BuildTightenedRankingLp(int n);

// Ranking LP for graphs of odd girth >= 2k+1: every victim compensates k
// times and the no-backup and backup profiles collect max(k-2, 0) extra
// copies. Requires k >= 2.
LpModel BuildOddGirthRankingLp(int n, int k);

// Discretized FRanking LP. Variables g_i (1..n), h_k (0..n); profile bounds
// GF_*; per-rank bounds GFP_i, GFA_i; maximizes W, the minimum over split
// points of the passive-prefix / active-suffix average.
LpModel BuildFRankingLp(int n);

LpModel BuildModel(LpVariant variant, int n, int k = 0);

}  // namespace qcm

#endif  // QCM_LP_FACTORY_H_
