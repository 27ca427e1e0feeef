#include "qcm/simplex.h"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qcm {

const char* SolveStatusName(SolveStatus status) {
  switch (status) {
    case SolveStatus::kOptimal: return "OPTIMAL";
    case SolveStatus::kInfeasible: return "INFEASIBLE";
    case SolveStatus::kUnbounded: return "UNBOUNDED";
    case SolveStatus::kIterationLimit: return "ITERATION_LIMIT";
  }
  return "?";
}

std::map<std::string, double> Solution::Assignment(const LpModel& model) const {
  std::map<std::string, double> out;
  for (int v = 0; v < model.variable_count() && v < static_cast<int>(values.size()); ++v) {
    out[model.variable_name(v)] = values[v];
  }
  return out;
}

namespace {

constexpr double kPivotTol = 1e-9;
constexpr int kStallLimit = 50;

// max c'x s.t. rows[i]·x <= rhs[i], x free; rows stored sparsely.
struct DenseProblem {
  int vars = 0;
  std::vector<std::vector<std::pair<int, double>>> rows;
  std::vector<double> rhs;
  std::vector<double> cost;
};

DenseProblem Lower(const LpModel& model) {
  DenseProblem p;
  p.vars = model.variable_count();
  p.cost.assign(p.vars, 0.0);
  for (const Term& t : model.objective()) p.cost[t.var] = t.coef.convert_to<double>();
  auto push = [&p](const Constraint& c, double sign) {
    std::vector<std::pair<int, double>> row;
    for (const Term& t : c.terms) row.emplace_back(t.var, sign * t.coef.convert_to<double>());
    p.rows.push_back(std::move(row));
    p.rhs.push_back(sign * c.rhs.convert_to<double>());
  };
  for (const Constraint& c : model.constraints()) {
    if (c.sense != Sense::kGreaterEqual) push(c, 1.0);
    if (c.sense != Sense::kLessEqual) push(c, -1.0);
  }
  return p;
}

class DualTableau {
 public:
  DualTableau(const DenseProblem& p, const SolveOptions& options)
      : rows_(p.vars),
        cols_(static_cast<int>(p.rows.size())),
        width_(cols_ + rows_ + 1),
        options_(options),
        t_(static_cast<size_t>(rows_) * width_, 0.0),
        basis_(rows_),
        sign_(rows_, 1.0),
        base_rhs_(rows_, 0.0),
        cost_(p.rhs) {
    for (int r = 0; r < rows_; ++r) {
      if (p.cost[r] < 0) sign_[r] = -1.0;
      base_rhs_[r] = sign_[r] * p.cost[r];
      At(r, width_ - 1) = base_rhs_[r] + Perturbation(r);
      At(r, cols_ + r) = 1.0;
      basis_[r] = cols_ + r;
    }
    for (int j = 0; j < cols_; ++j) {
      for (const auto& [var, a] : p.rows[j]) At(var, j) += sign_[var] * a;
    }
  }

  // Returns kOptimal, kInfeasible (primal infeasible or unbounded; caller
  // disambiguates), kUnbounded (dual unbounded: primal infeasible), or
  // kIterationLimit.
  SolveStatus Run() {
    // Phase 1: minimize the sum of artificials.
    d_.assign(width_, 0.0);
    for (int r = 0; r < rows_; ++r) {
      const double* row = &At(r, 0);
      for (int j = 0; j < cols_; ++j) d_[j] -= row[j];
      d_[width_ - 1] -= row[width_ - 1];
    }
    SolveStatus s = Iterate();
    if (s != SolveStatus::kOptimal) return s;
    double scale = 1.0;
    for (int r = 0; r < rows_; ++r) scale = std::max(scale, std::abs(base_rhs_[r]));
    double residual = 0.0;
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] >= cols_) residual += std::abs(ExactRhs(r));
    }
    if (residual > 1e-7 * scale) return SolveStatus::kInfeasible;
    DriveOutArtificials();

    // Phase 2: the dual objective; artificials may not re-enter.
    d_.assign(width_, 0.0);
    for (int j = 0; j < cols_; ++j) d_[j] = cost_[j];
    for (int r = 0; r < rows_; ++r) {
      const int b = basis_[r];
      if (b >= cols_) continue;
      const double cb = cost_[b];
      if (cb == 0.0) continue;
      const double* row = &At(r, 0);
      for (int j = 0; j < width_; ++j) {
        if (row[j] != 0.0) d_[j] -= cb * row[j];
      }
    }
    s = Iterate();
    if (s != SolveStatus::kOptimal) return s;
    // Drop the perturbation and repair any rows it was propping up.
    std::vector<double> exact(rows_);
    for (int r = 0; r < rows_; ++r) exact[r] = ExactRhs(r);
    for (int r = 0; r < rows_; ++r) At(r, width_ - 1) = exact[r];
    d_[width_ - 1] = 0.0;
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) d_[width_ - 1] -= cost_[basis_[r]] * exact[r];
    }
    return DualCleanup();
  }

  // Primal solution from the artificial columns' reduced costs.
  std::vector<double> Primal() const {
    std::vector<double> x(rows_);
    for (int r = 0; r < rows_; ++r) x[r] = -sign_[r] * d_[cols_ + r];
    return x;
  }

  int64_t iterations() const { return iterations_; }

 private:
  double& At(int r, int j) { return t_[static_cast<size_t>(r) * width_ + j]; }
  const double& At(int r, int j) const { return t_[static_cast<size_t>(r) * width_ + j]; }

  // Deterministic right-hand-side shift that breaks degenerate ties.
  static double Perturbation(int r) {
    const double frac = std::fmod(0.6180339887498949 * (r + 1), 1.0);
    return 1e-7 * (1.0 + frac);
  }

  // B^-1 applied to the unperturbed right-hand side; B^-1 sits in the
  // artificial columns.
  double ExactRhs(int i) const {
    const double* row = &At(i, cols_);
    double v = 0.0;
    for (int r = 0; r < rows_; ++r) {
      if (row[r] != 0.0 && base_rhs_[r] != 0.0) v += row[r] * base_rhs_[r];
    }
    return v;
  }

  // Dual simplex on the tableau: the basis is optimal (d >= 0) but some
  // basic values may be slightly negative.
  SolveStatus DualCleanup() {
    const double tol = options_.feasibility_tol;
    while (true) {
      if (iterations_ >= options_.max_iterations) return SolveStatus::kIterationLimit;
      int p = -1;
      for (int r = 0; r < rows_; ++r) {
        if (At(r, width_ - 1) < -tol && (p < 0 || basis_[r] < basis_[p])) p = r;
      }
      if (p < 0) return SolveStatus::kOptimal;
      int q = -1;
      double best = std::numeric_limits<double>::infinity();
      for (int j = 0; j < cols_; ++j) {
        const double a = At(p, j);
        if (a >= -kPivotTol) continue;
        const double ratio = std::max(d_[j], 0.0) / -a;
        if (ratio < best - 1e-12) {
          best = ratio;
          q = j;
        }
      }
      if (q < 0) return SolveStatus::kUnbounded;
      Pivot(p, q);
      ++iterations_;
      ++cleanup_pivots_;
    }
  }

  int ChooseEntering(bool bland) const {
    const double tol = options_.feasibility_tol;
    if (bland) {
      for (int j = 0; j < cols_; ++j) {
        if (d_[j] < -tol) return j;
      }
      return -1;
    }
    int best = -1;
    double best_d = -tol;
    for (int j = 0; j < cols_; ++j) {
      if (d_[j] < best_d) {
        best_d = d_[j];
        best = j;
      }
    }
    return best;
  }

  int ChooseLeaving(int q) const {
    int best = -1;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (int r = 0; r < rows_; ++r) {
      const double a = At(r, q);
      if (a <= kPivotTol) continue;
      const double ratio = At(r, width_ - 1) / a;
      if (best < 0 || ratio < best_ratio - 1e-12) {
        best = r;
        best_ratio = ratio;
      } else if (ratio <= best_ratio + 1e-12 && basis_[r] < basis_[best]) {
        best = r;
        best_ratio = std::min(best_ratio, ratio);
      }
    }
    return best;
  }

  void Pivot(int p, int q) {
    double* prow = &At(p, 0);
    const double inv = 1.0 / prow[q];
    nz_.clear();
    for (int j = 0; j < width_; ++j) {
      if (prow[j] != 0.0) {
        prow[j] *= inv;
        nz_.push_back(j);
      }
    }
    prow[q] = 1.0;
    for (int r = 0; r < rows_; ++r) {
      if (r == p) continue;
      double* row = &At(r, 0);
      const double f = row[q];
      if (f == 0.0) continue;
      for (int j : nz_) row[j] -= f * prow[j];
      row[q] = 0.0;
      if (std::abs(row[width_ - 1]) < 1e-13) row[width_ - 1] = 0.0;
    }
    const double f = d_[q];
    if (f != 0.0) {
      for (int j : nz_) d_[j] -= f * prow[j];
      d_[q] = 0.0;
    }
    basis_[p] = q;
  }

  SolveStatus Iterate() {
    int stall = 0;
    double last = d_[width_ - 1];
    while (true) {
      if (iterations_ >= options_.max_iterations) return SolveStatus::kIterationLimit;
      const bool bland =
          options_.pivot_rule == PivotRule::kBland || stall >= kStallLimit;
      const int q = ChooseEntering(bland);
      if (q < 0) return SolveStatus::kOptimal;
      const int p = ChooseLeaving(q);
      if (p < 0) return SolveStatus::kUnbounded;
      Pivot(p, q);
      ++iterations_;
      const double now = d_[width_ - 1];
      if (now > last + 1e-12) {
        stall = 0;
        last = now;
      } else {
        ++stall;
      }
    }
  }

  void DriveOutArtificials() {
    for (int r = 0; r < rows_; ++r) {
      if (basis_[r] < cols_) continue;
      int best = -1;
      double best_abs = kPivotTol;
      for (int j = 0; j < cols_; ++j) {
        const double a = std::abs(At(r, j));
        if (a > best_abs) {
          best_abs = a;
          best = j;
        }
      }
      if (best >= 0) Pivot(r, best);
    }
  }

  int rows_;
  int cols_;
  int width_;
  SolveOptions options_;
  std::vector<double> t_;
  std::vector<int> basis_;
  std::vector<double> sign_;
  std::vector<double> base_rhs_;
  std::vector<double> cost_;
  std::vector<double> d_;
  std::vector<int> nz_;
  int64_t iterations_ = 0;
  int64_t cleanup_pivots_ = 0;
};

struct DenseResult {
  SolveStatus status;
  std::vector<double> x;
  int64_t iterations;
};

DenseResult SolveDense(const DenseProblem& p, const SolveOptions& options) {
  DualTableau tableau(p, options);
  SolveStatus s = tableau.Run();
  DenseResult result{s, {}, tableau.iterations()};
  if (s == SolveStatus::kOptimal) result.x = tableau.Primal();
  if (s == SolveStatus::kUnbounded) result.status = SolveStatus::kInfeasible;
  return result;
}

// When the dual is infeasible the primal is infeasible or unbounded; decide
// by minimizing the largest violation s of A x <= b + s.
SolveStatus Disambiguate(const DenseProblem& p, const SolveOptions& options) {
  DenseProblem aux;
  aux.vars = p.vars + 1;
  aux.cost.assign(aux.vars, 0.0);
  aux.cost[p.vars] = -1.0;
  for (size_t i = 0; i < p.rows.size(); ++i) {
    auto row = p.rows[i];
    row.emplace_back(p.vars, -1.0);
    aux.rows.push_back(std::move(row));
    aux.rhs.push_back(p.rhs[i]);
  }
  aux.rows.push_back({{p.vars, -1.0}});
  aux.rhs.push_back(0.0);
  const DenseResult r = SolveDense(aux, options);
  if (r.status != SolveStatus::kOptimal) return SolveStatus::kIterationLimit;
  return r.x[p.vars] > 1e-7 ? SolveStatus::kInfeasible : SolveStatus::kUnbounded;
}

}  // namespace

Solution Solve(const LpModel& model, const SolveOptions& options) {
  const DenseProblem p = Lower(model);
  DenseResult r = SolveDense(p, options);
  Solution solution;
  solution.iterations = r.iterations;
  solution.status = r.status;
  if (r.status == SolveStatus::kInfeasible) {
    solution.status = Disambiguate(p, options);
  }
  if (solution.status == SolveStatus::kOptimal) {
    solution.values = std::move(r.x);
    double objective = 0.0;
    for (int v = 0; v < p.vars; ++v) objective += p.cost[v] * solution.values[v];
    solution.objective = objective;
  }
  return solution;
}

}  // namespace qcm
