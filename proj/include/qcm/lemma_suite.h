#ifndef QCM_LEMMA_SUITE_H_
#define QCM_LEMMA_SUITE_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcm/fully_online.h"
#include "qcm/graph.h"
#include "qcm/greedy.h"
#include "qcm/query_list.h"

namespace qcm {

enum class ListFamily { kRanking, kFRanking, kArbitrary };

const char* ListFamilyName(ListFamily family);

// One (graph, list) pair a property is checked on. Ranks and decision order
// are kept so checks can re-rank vertices; the schedule is only used by the
// fully-online check.
struct LemmaInstance {
  Graph graph;
  ListFamily family = ListFamily::kRanking;
  RankVector ranks;
  std::vector<int> decision_order;  // FRanking only
  QueryList list;
  uint64_t seed = 0;
  std::optional<FullyOnlineSchedule> schedule;
  std::string origin;
};

class LemmaFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Matcher = std::function<MatchingTrace(const Graph&, const QueryList&)>;

// The matcher is swappable so a broken engine can be shown to be caught.
struct LemmaContext {
  Matcher match = GreedyMatch;
};

struct LemmaResult {
  std::string name;
  int64_t instances = 0;
  int64_t checks = 0;
  int64_t failures = 0;
  double seconds = 0.0;
  std::string first_failure;
  std::string witness;       // replayable text of the shrunk failing instance
  std::string witness_path;  // where it was written, if anywhere
  bool passed() const { return failures == 0; }
};

struct LemmaReport {
  uint64_t seed = 0;
  int64_t budget = 0;
  int exhaustive_pairs = 0;
  std::vector<LemmaResult> results;
  bool passed() const;
  std::string ToJson() const;
};

struct SuiteOptions {
  int64_t budget = 1000;     // random instances per lemma
  uint64_t seed = 7;
  int exhaustive_pairs = 3;  // 0 skips the exhaustive sweep
  int jobs = 1;
  std::string witness_dir;   // empty: keep witnesses in the report only
  bool shrink = true;
  LemmaContext context;
};

const std::vector<std::string>& RegisteredLemmas();
bool IsRegisteredLemma(const std::string& name);

// Throws std::invalid_argument for unknown names.
LemmaReport RunLemmaSuite(const std::vector<std::string>& names, const SuiteOptions& options);

// Runs one property on one instance; returns the failure message if any.
std::optional<std::string> CheckLemma(const std::string& name, const LemmaInstance& instance,
                                      const LemmaContext& context = {});

std::string WitnessText(const std::string& lemma, const LemmaInstance& instance,
                        const std::string& message);

struct ParsedWitness {
  std::string lemma;
  std::string message;
  LemmaInstance instance;
};

ParsedWitness ParseWitness(const std::string& text);

}  // namespace qcm

#endif  // QCM_LEMMA_SUITE_H_
