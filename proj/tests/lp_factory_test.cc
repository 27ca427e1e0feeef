#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "lp_reference.h"
#include "qcm/golden.h"
#include "qcm/lp_factory.h"
#include "qcm/simplex.h"

using namespace qcm;

namespace {

struct Case {
  LpVariant variant;
  int k;
};

const std::vector<Case> kAllVariants = {{LpVariant::kSimple, 0},
                                        {LpVariant::kTightened, 0},
                                        {LpVariant::kOddGirth, 2},
                                        {LpVariant::kOddGirth, 3},
                                        {LpVariant::kOddGirth, 6},
                                        {LpVariant::kFRanking, 0}};

std::multiset<std::string> Canonical(const reference::Model& m) {
  std::multiset<std::string> out;
  for (const auto& r : m.rows) out.insert(r.Canonical());
  return out;
}

std::map<std::string, int> Counts(const reference::Model& m) {
  std::map<std::string, int> out;
  for (const auto& r : m.rows) ++out[r.family];
  return out;
}

double Value(LpVariant variant, int n, int k = 0) {
  const Solution s = Solve(BuildModel(variant, n, k));
  EXPECT_EQ(s.status, SolveStatus::kOptimal);
  return s.objective;
}

}  // namespace

TEST(LpFactory, MatchesDeclarativeReferenceEnumeration) {
  for (const Case& c : kAllVariants) {
    for (int n = 1; n <= 4; ++n) {
      SCOPED_TRACE(std::string(LpVariantName(c.variant)) + " n=" + std::to_string(n) +
                   " k=" + std::to_string(c.k));
      const LpModel model = BuildModel(c.variant, n, c.k);
      const reference::Model factory = reference::FromFactory(model);
      const reference::Model ref = reference::Enumerate(c.variant, n, c.k);
      EXPECT_EQ(Counts(factory), Counts(ref));
      const auto a = Canonical(factory), b = Canonical(ref);
      EXPECT_EQ(a.size(), b.size());
      std::vector<std::string> only_factory, only_ref;
      std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_factory));
      std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_ref));
      EXPECT_TRUE(only_factory.empty()) << "factory-only row: " << only_factory.front();
      EXPECT_TRUE(only_ref.empty()) << "reference-only row: " << only_ref.front();
      EXPECT_EQ(factory.objective, ref.objective);
    }
  }
}

TEST(LpFactory, EveryTagHasAGroup) {
  for (const Case& c : kAllVariants) {
    const LpModel model = BuildModel(c.variant, 3, c.k);
    for (const auto& [family, count] : FamilyCounts(model)) {
      EXPECT_NE(GroupOf(c.variant, family), FamilyGroup::kOther) << family;
      EXPECT_GT(count, 0);
    }
  }
}

TEST(LpFactory, EveryVariableIsConstrained) {
  for (const Case& c : kAllVariants) {
    const LpModel model = BuildModel(c.variant, 4, c.k);
    std::vector<bool> used(model.variable_count(), false);
    for (const auto& con : model.constraints()) {
      for (const auto& t : con.terms) {
        ASSERT_GE(t.var, 0);
        ASSERT_LT(t.var, model.variable_count());
        used[t.var] = true;
      }
    }
    for (int v = 0; v < model.variable_count(); ++v) {
      EXPECT_TRUE(used[v]) << model.variable_name(v);
    }
  }
}

TEST(LpFactory, PinsDegenerateCompensation) {
  const LpModel ranking = BuildRankingLp(3);
  int pinned = 0;
  for (const auto& con : ranking.constraints()) {
    if (con.sense != Sense::kEqual) continue;
    ASSERT_EQ(con.terms.size(), 1u);
    EXPECT_EQ(ranking.variable_name(con.terms[0].var).substr(0, 2), "h_");
    EXPECT_EQ(ranking.variable_name(con.terms[0].var).back(), '0');
    ++pinned;
  }
  EXPECT_EQ(pinned, 4);
  const LpModel franking = BuildFRankingLp(3);
  const auto counts = FamilyCounts(franking);
  EXPECT_EQ(counts.at("h_zero"), 1);
}

TEST(LpFactory, ExposesRequiredNames) {
  const LpModel ranking = BuildTightenedRankingLp(2);
  for (const char* name : {"g_1_2", "h_2_0", "Gu_1", "Gu_2"}) {
    EXPECT_GE(ranking.Find(name), 0) << name;
  }
  const LpModel franking = BuildFRankingLp(2);
  for (const char* name : {"g_1", "h_0", "h_2", "GFP_1", "GFA_2", "W"}) {
    EXPECT_GE(franking.Find(name), 0) << name;
  }
}

TEST(LpFactory, RejectsBadParameters) {
  EXPECT_THROW(BuildRankingLp(0), LpParameterError);
  EXPECT_THROW(BuildFRankingLp(-1), LpParameterError);
  EXPECT_THROW(BuildOddGirthRankingLp(4, 1), LpParameterError);
  EXPECT_THROW(BuildModel(LpVariant::kGeneric, 2), LpParameterError);
}

TEST(LpFactory, DumpIsStable) {
  for (const Case& c : kAllVariants) {
    EXPECT_EQ(DumpModel(BuildModel(c.variant, 3, c.k)), DumpModel(BuildModel(c.variant, 3, c.k)));
    EXPECT_TRUE(BuildModel(c.variant, 2, c.k) == BuildModel(c.variant, 2, c.k));
  }
}

TEST(LpFactory, OddGirthUsesKCompensationCopies) {
  const LpModel m = BuildOddGirthRankingLp(2, 5);
  const int h1n = m.Find("h_1_2");
  bool found = false;
  for (const auto& con : m.constraints()) {
    if (con.tag.family != "gain_cap" || con.tag.indices != std::vector<int>{2, 2}) continue;
    for (const auto& t : con.terms) {
      if (t.var == h1n) EXPECT_EQ(t.coef, 5);
    }
    found = true;
  }
  EXPECT_TRUE(found);
}

TEST(LpValues, PublishedSmallValues) {
  EXPECT_NEAR(Value(LpVariant::kTightened, 1), *GoldenValue(LpVariant::kTightened, 1), kGoldenTolerance);
  EXPECT_NEAR(Value(LpVariant::kTightened, 5), *GoldenValue(LpVariant::kTightened, 5), kGoldenTolerance);
  EXPECT_NEAR(Value(LpVariant::kTightened, 5), 0.53247, kGoldenTolerance);
  EXPECT_NEAR(Value(LpVariant::kFRanking, 1), 0.5, kGoldenTolerance);
  EXPECT_NEAR(Value(LpVariant::kFRanking, 3), 0.50555, kGoldenTolerance);
  EXPECT_NEAR(Value(LpVariant::kFRanking, 5), 0.51793, kGoldenTolerance);
}

TEST(LpValues, SimpleNeverBeatsTightened) {
  for (int n = 1; n <= 6; ++n) {
    EXPECT_LE(Value(LpVariant::kSimple, n), Value(LpVariant::kTightened, n) + 1e-9) << n;
  }
}

TEST(LpValues, OddGirthDominatesSimpleAndGrowsWithK) {
  for (int n : {2, 4}) {
    double last = Value(LpVariant::kSimple, n) - 1e-9;
    for (int k : {2, 3, 4, 6}) {
      const double v = Value(LpVariant::kOddGirth, n, k);
      EXPECT_GE(v, last - 1e-9) << "n=" << n << " k=" << k;
      last = v;
    }
  }
}

TEST(LpValues, MonotoneInNAsRegressionSignal) {
  for (LpVariant variant : {LpVariant::kSimple, LpVariant::kTightened, LpVariant::kFRanking}) {
    double last = 0.0;
    for (int n = 1; n <= 5; ++n) {
      const double v = Value(variant, n);
      EXPECT_GE(v, last - 1e-9) << LpVariantName(variant) << " n=" << n;
      last = v;
    }
  }
}
