#ifndef QCM_LP_IO_H_
#define QCM_LP_IO_H_

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "qcm/lp_model.h"

namespace qcm {

enum class ModelFormat { kLpText, kMps };

class ModelParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MissingVariableError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// CPLEX-LP text or MPS. Numbers use 17 significant digits; row names carry
// the provenance tag; all variables are declared free. MPS is written in
// fixed columns when every name and number fits, otherwise in the
// whitespace-separated (free) dialect.
std::string ExportModel(const LpModel& model, ModelFormat format);

// Inverse of ExportModel for files it wrote (and similar well-formed files).
// Coefficients are recovered as the simplest rational within 1e-15.
LpModel ParseModel(const std::string& text, ModelFormat format);

// Closest rational with a small denominator to a printed coefficient.
Rational RecoverRational(double value);

// "name value" per line; '#' starts a comment.
std::map<std::string, double> ParseSolution(const std::string& text);
std::string WriteSolution(const LpModel& model, const std::vector<double>& values);

struct Violation {
  ConstraintTag tag;
  double amount;
};

struct VerificationReport {
  double max_violation = 0.0;
  std::vector<Violation> violations;  // above tolerance, worst first
  double objective = 0.0;
  int constraint_count = 0;

  bool ok() const { return violations.empty(); }
};

// Evaluates every constraint exactly: coefficients are rational and each
// double value is converted to its exact binary rational.
VerificationReport VerifySolution(const LpModel& model,
                                  const std::map<std::string, double>& assignment,
                                  double tol);
VerificationReport VerifySolution(const LpModel& model, const std::vector<double>& values,
                                  double tol);

}  // namespace qcm

#endif  // QCM_LP_IO_H_
