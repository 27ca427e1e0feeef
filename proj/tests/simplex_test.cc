#include <gtest/gtest.h>

#include <cmath>
#include <functional>

#include "qcm/golden.h"
#include "qcm/lp_factory.h"
#include "qcm/lp_io.h"
#include "qcm/simplex.h"

using namespace qcm;

namespace {

// Tiny model builder: rows written as coefficient lists over x0..x{m-1}.
struct Tiny {
  std::string name;
  int vars;
  std::vector<double> objective;
  std::vector<std::tuple<std::vector<int>, Sense, int>> rows;
  SolveStatus status;
  double optimum;
};

LpModel Build(const Tiny& t) {
  LpModel m(LpVariant::kGeneric, 0, 0);
  for (int i = 0; i < t.vars; ++i) m.Variable("x" + std::to_string(i));
  int r = 0;
  for (const auto& [coefs, sense, rhs] : t.rows) {
    LinearExpr e;
    for (int i = 0; i < t.vars; ++i) {
      if (coefs[i] != 0) e.Add(i, coefs[i]);
    }
    m.AddConstraint(e, sense, rhs, {"row", {r++}});
  }
  LinearExpr obj;
  for (int i = 0; i < t.vars; ++i) {
    if (t.objective[i] != 0) obj.Add(i, Rational(static_cast<int>(t.objective[i] * 2), 2));
  }
  m.SetObjective(obj);
  return m;
}

constexpr Sense LE = Sense::kLessEqual;
constexpr Sense GE = Sense::kGreaterEqual;
constexpr Sense EQ = Sense::kEqual;
constexpr SolveStatus OPT = SolveStatus::kOptimal;

// Optima worked out by hand (vertex enumeration on paper).
const std::vector<Tiny> kTiny = {
    {"bounded_x", 1, {1}, {{{1}, LE, 1}, {{1}, GE, 0}}, OPT, 1},
    {"negative_objective", 1, {-1}, {{{1}, LE, 5}, {{1}, GE, -3}}, OPT, 3},
    {"equality", 2, {1, 1}, {{{1, -1}, EQ, 0}, {{1, 0}, LE, 2}}, OPT, 4},
    {"classic_2d", 2, {3, 5}, {{{1, 0}, LE, 4}, {{0, 2}, LE, 12}, {{3, 2}, LE, 18}, {{1, 0}, GE, 0}, {{0, 1}, GE, 0}}, OPT, 36},
    {"diet_min", 2, {-2, -3}, {{{1, 1}, GE, 4}, {{1, 3}, GE, 6}, {{1, 0}, GE, 0}, {{0, 1}, GE, 0}}, OPT, -9},
    {"unbounded", 2, {1, 1}, {{{1, -1}, LE, 1}, {{1, 0}, GE, 0}}, SolveStatus::kUnbounded, 0},
    {"infeasible", 1, {1}, {{{1}, LE, 1}, {{1}, GE, 2}}, SolveStatus::kInfeasible, 0},
    {"free_unbounded", 1, {1}, {}, SolveStatus::kUnbounded, 0},
    {"zero_objective", 2, {0, 0}, {{{1, 1}, LE, 3}}, OPT, 0},
    {"degenerate_vertex", 2, {1, 1}, {{{1, 0}, LE, 1}, {{0, 1}, LE, 1}, {{1, 1}, LE, 2}, {{1, 2}, LE, 3}, {{2, 1}, LE, 3}}, OPT, 2},
    {"redundant_equalities", 2, {1, 2}, {{{1, 1}, EQ, 2}, {{2, 2}, EQ, 4}, {{1, 0}, GE, 0}, {{0, 1}, GE, 0}}, OPT, 4},
    {"inconsistent_equalities", 2, {1, 0}, {{{1, 1}, EQ, 2}, {{1, 1}, EQ, 3}}, SolveStatus::kInfeasible, 0},
    {"box_3d", 3, {1, 1, 1}, {{{1, 0, 0}, LE, 1}, {{0, 1, 0}, LE, 2}, {{0, 0, 1}, LE, 3}}, OPT, 6},
    {"simplex_3d", 3, {1, 2, 3}, {{{1, 1, 1}, LE, 1}, {{1, 0, 0}, GE, 0}, {{0, 1, 0}, GE, 0}, {{0, 0, 1}, GE, 0}}, OPT, 3},
    {"minimax", 3, {0, 0, 1}, {{{1, 1, 0}, EQ, 1}, {{-1, 0, 1}, LE, 0}, {{0, -1, 1}, LE, 0}}, OPT, 0.5},
    {"transport", 4, {-1, -2, -3, -1}, {{{1, 1, 0, 0}, EQ, 3}, {{0, 0, 1, 1}, EQ, 2}, {{1, 0, 1, 0}, GE, 2}, {{0, 1, 0, 1}, GE, 3},
                                        {{1, 0, 0, 0}, GE, 0}, {{0, 1, 0, 0}, GE, 0}, {{0, 0, 1, 0}, GE, 0}, {{0, 0, 0, 1}, GE, 0}}, OPT, -6},
    {"negative_rhs", 2, {1, 1}, {{{1, 0}, LE, -1}, {{0, 1}, LE, -2}}, OPT, -3},
    {"klee_minty_3", 3, {4, 2, 1}, {{{1, 0, 0}, LE, 5}, {{4, 1, 0}, LE, 25}, {{8, 4, 1}, LE, 125},
                                    {{1, 0, 0}, GE, 0}, {{0, 1, 0}, GE, 0}, {{0, 0, 1}, GE, 0}}, OPT, 125},
    {"cycling_beale", 4, {3, -80, 2, -24}, {{{1, -32, -4, 36}, LE, 0}, {{1, -24, -1, 6}, LE, 0}, {{0, 0, 1, 0}, LE, 1},
                                          {{1, 0, 0, 0}, GE, 0}, {{0, 1, 0, 0}, GE, 0}, {{0, 0, 1, 0}, GE, 0}, {{0, 0, 0, 1}, GE, 0}}, OPT, 5},
    {"half_objective", 2, {1, 0}, {{{2, 0}, LE, 1}, {{1, 0}, GE, -1}}, OPT, 0.5},
};

}  // namespace

TEST(Simplex, TinyModelsWithKnownOptima) {
  ASSERT_EQ(kTiny.size(), 20u);
  for (const Tiny& t : kTiny) {
    SCOPED_TRACE(t.name);
    for (PivotRule rule : {PivotRule::kBland, PivotRule::kDantzig}) {
      SolveOptions opt;
      opt.pivot_rule = rule;
      const LpModel model = Build(t);
      const Solution s = Solve(model, opt);
      ASSERT_EQ(s.status, t.status) << SolveStatusName(s.status);
      if (t.status == OPT) {
        EXPECT_NEAR(s.objective, t.optimum, 1e-9);
        const VerificationReport report = VerifySolution(model, s.values, 1e-9);
        EXPECT_TRUE(report.ok()) << report.max_violation;
        EXPECT_NEAR(report.objective, s.objective, 1e-9);
      }
    }
  }
}

TEST(Simplex, IterationLimitIsReported) {
  SolveOptions opt;
  opt.max_iterations = 1;
  const Solution s = Solve(BuildTightenedRankingLp(3), opt);
  EXPECT_EQ(s.status, SolveStatus::kIterationLimit);
}

TEST(Simplex, DeterministicAcrossRuns) {
  const LpModel model = BuildTightenedRankingLp(4);
  const Solution a = Solve(model), b = Solve(model);
  EXPECT_EQ(a.status, SolveStatus::kOptimal);
  EXPECT_NEAR(a.objective, b.objective, 1e-12);
  EXPECT_EQ(a.values, b.values);
  EXPECT_EQ(a.iterations, b.iterations);
}

TEST(Simplex, PivotRulesAgree) {
  for (int n = 1; n <= 4; ++n) {
    SolveOptions dantzig;
    dantzig.pivot_rule = PivotRule::kDantzig;
    EXPECT_NEAR(Solve(BuildFRankingLp(n)).objective, Solve(BuildFRankingLp(n), dantzig).objective, 1e-9);
    EXPECT_NEAR(Solve(BuildRankingLp(n)).objective, Solve(BuildRankingLp(n), dantzig).objective, 1e-9);
  }
}

TEST(Simplex, PublishedTableEntries) {
  EXPECT_NEAR(Solve(BuildTightenedRankingLp(2)).objective, 0.48263, kGoldenTolerance);
  EXPECT_NEAR(Solve(BuildFRankingLp(2)).objective, 0.5, kGoldenTolerance);
  for (int n = 1; n <= 4; ++n) {
    EXPECT_NEAR(Solve(BuildTightenedRankingLp(n)).objective, *GoldenValue(LpVariant::kTightened, n),
                kGoldenTolerance);
    EXPECT_NEAR(Solve(BuildFRankingLp(n)).objective, *GoldenValue(LpVariant::kFRanking, n),
                kGoldenTolerance);
  }
}

TEST(Simplex, SolutionsVerifyAndRespectFunctionShape) {
  for (LpVariant variant : {LpVariant::kSimple, LpVariant::kTightened, LpVariant::kFRanking}) {
    for (int n = 1; n <= 4; ++n) {
      const LpModel model = BuildModel(variant, n);
      SolveOptions opt;
      const Solution s = Solve(model, opt);
      ASSERT_EQ(s.status, SolveStatus::kOptimal);
      EXPECT_LE(VerifySolution(model, s.values, 10 * opt.feasibility_tol).max_violation,
                10 * opt.feasibility_tol);
      for (int v = 0; v < model.variable_count(); ++v) {
        const std::string& name = model.variable_name(v);
        if (name.rfind("h_", 0) == 0) EXPECT_GE(s.values[v], -1e-9) << name;
        if (name.rfind("g_", 0) == 0) {
          EXPECT_GE(s.values[v], -1e-9) << name;
          EXPECT_LE(s.values[v], 1 + 1e-9) << name;
        }
      }
    }
  }
}
