#ifndef QCM_STRUCTURE_H_
#define QCM_STRUCTURE_H_

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcm/graph.h"
#include "qcm/greedy.h"
#include "qcm/query_list.h"

namespace qcm {

// Raised when an observed structure contradicts a proven property; callers
// must not catch and continue.
class StructuralViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// R(L) xor R(L without v), walked from v. Edge i joins vertices[i] and
// vertices[i+1]; even edges come from R(L), odd edges from R(L without v).
struct AlternatingPath {
  std::vector<int> vertices;
  std::vector<int64_t> query_times;

  int length() const { return static_cast<int>(vertices.size()) - 1; }
  int pivot() const { return vertices.front(); }
  // Position of w on the path, or -1.
  int IndexOf(int w) const;
};

// `with` is R(L), `without` is R(L without pivot) on the same list.
AlternatingPath ExtractAlternatingPath(const MatchingTrace& with, const MatchingTrace& without,
                                       int pivot);
AlternatingPath AlternatingPathOf(const Graph& g, const QueryList& list, int v);

// u is matched strictly later (or not at all) in `after` than in `before`.
inline bool WorseOff(const MatchingTrace& after, const MatchingTrace& before, int u) {
  return after.time[u] > before.time[u] ||
         (!after.IsMatched(u) && before.IsMatched(u));
}

// u's match once its current match is removed; nullopt when u is unmatched
// or the re-run leaves it unmatched.
std::optional<int> BackupOf(const Graph& g, const QueryList& list, int u);

// Vertices w whose removal lets the unmatched u match; empty if u matched.
std::vector<int> BlockersOf(const Graph& g, const QueryList& list, int u);

enum class MatchRole { kNone, kActive, kPassive };

// (x_u, x_v, x_b) of u with u* excluded, with u's role in each match.
struct Profile {
  int u = -1;
  double x_u = 0.0;
  int v = -1;
  int b = -1;
  std::optional<double> x_v;
  std::optional<double> x_b;
  MatchRole v_role = MatchRole::kNone;
  MatchRole b_role = MatchRole::kNone;

  // e.g. "(x_u,x_v^A,x_b^A)".
  std::string TypeName() const;
};

Profile RankingProfile(const Graph& g, const RankVector& x, int u, int ustar);
// Requires u to decide before ustar in pi. Throws StructuralViolation if an
// active v-match has a backup that is not actively matched at a larger rank.
Profile FRankingProfile(const Graph& g, const std::vector<int>& pi, const RankVector& x, int u,
                        int ustar);

// How the list is formed from a rank vector.
struct InsertionContext {
  bool franking = false;
  std::vector<int> decision_order;  // FRanking only

  static InsertionContext Ranking() { return {}; }
  static InsertionContext FRanking(std::vector<int> pi) { return {true, std::move(pi)}; }
  QueryList ListFor(const RankVector& x) const;
};

// Outcome of inserting the vertex at any rank in (lo, hi); `rank` is the
// midpoint used to realize it. `without` runs the same list with the
// inserted vertex unavailable.
struct InsertionInterval {
  double lo = 0.0;
  double hi = 0.0;
  double rank = 0.0;
  QueryList list;
  MatchingTrace with;
  MatchingTrace without;
};

// Intervals between consecutive ranks of the other vertices, in increasing
// order. base_x's entry for `inserted` is ignored; `also_excluded` stay
// unavailable in both runs.
std::vector<InsertionInterval> InsertionOutcomes(const Graph& g, const RankVector& base_x,
                                                 int inserted, const InsertionContext& context,
                                                 const std::vector<int>& also_excluded = {});

// Rank of v's match in the trace, +infinity when unmatched.
double MatchRank(const MatchingTrace& trace, const RankVector& x, int v);

struct ThresholdWitness {
  double rank = 0.0;
  bool u_worse_off = false;
  bool ustar_passive = false;
  int ustar_mate = -1;
  int path_length = 0;
  std::vector<int> path;  // alternating path rooted at u*
};

struct ThresholdReport {
  bool u_matched = false;  // in the run without u*
  double theta0 = 0.0;     // sup of ranks making u worse off
  double theta1 = 0.0;     // sup of ranks where u* is matched passively
  double theta3 = 0.0;     // theta0 restricted to long paths (see below)
  std::vector<ThresholdWitness> witnesses;  // one per interval
};

// Impacting, marginal, and length-6 thresholds of inserting ustar, from the
// interval representatives. theta3 only counts ranks whose path puts a
// vertex ranked above theta0 two steps before u.
ThresholdReport Thresholds(const Graph& g, const RankVector& base_x, int u, int ustar,
                           const InsertionContext& context);

std::string PathToJson(const AlternatingPath& path);
std::string ProfileToJson(const Profile& profile);
std::string ThresholdsToJson(const ThresholdReport& report);

}  // namespace qcm

#endif  // QCM_STRUCTURE_H_
