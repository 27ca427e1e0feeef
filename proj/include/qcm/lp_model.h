#ifndef QCM_LP_MODEL_H_
#define QCM_LP_MODEL_H_

#include <boost/multiprecision/cpp_int.hpp>
#include <map>
#include <string>
#include <unordered_map>
#include <vector>

namespace qcm {

using Rational = boost::multiprecision::cpp_rational;

enum class LpVariant { kSimple, kTightened, kOddGirth, kFRanking, kGeneric };

const char* LpVariantName(LpVariant variant);

enum class Sense { kLessEqual, kGreaterEqual, kEqual };

// Coarse grouping of constraint families; every tag belongs to exactly one.
enum class FamilyGroup {
  kFunction,     // monotonicity and gain/compensation coupling of g, h
  kPinning,      // h at index 0 fixed to zero
  kUnmatched,    // u has no match without u*
  kNoBackup,     // u matched, no backup
  kBackup,       // u matched, with backup
  kAggregation,  // per-rank bound from the profile bounds
  kObjective,    // rows defining the objective auxiliary
  kOther,
};

const char* FamilyGroupName(FamilyGroup group);

struct ConstraintTag {
  std::string family;
  std::vector<int> indices;

  bool operator==(const ConstraintTag&) const = default;
  auto operator<=>(const ConstraintTag&) const = default;
  std::string ToString() const;
};

struct Term {
  int var;
  Rational coef;

  bool operator==(const Term&) const = default;
};

// sum(terms) <sense> rhs
struct Constraint {
  std::vector<Term> terms;  // sorted by variable, no zero coefficients
  Sense sense = Sense::kLessEqual;
  Rational rhs;
  ConstraintTag tag;

  bool operator==(const Constraint&) const = default;
};

// Linear expression plus constant, accumulated while building a family row.
class LinearExpr {
 public:
  LinearExpr& Add(int var, const Rational& coef);
  LinearExpr& AddConstant(const Rational& c) {
    constant_ += c;
    return *this;
  }
  const std::map<int, Rational>& terms() const { return terms_; }
  const Rational& constant() const { return constant_; }

 private:
  std::map<int, Rational> terms_;
  Rational constant_;
};

// Maximization LP over free variables.
class LpModel {
 public:
  LpModel() = default;
  LpModel(LpVariant variant, int n, int k) : variant_(variant), n_(n), k_(k) {}

  LpVariant variant() const { return variant_; }
  int n() const { return n_; }
  int k() const { return k_; }

  // Index of the named variable, declaring it on first use.
  int Variable(const std::string& name);
  // Index of an existing variable, or -1.
  int Find(const std::string& name) const;
  int variable_count() const { return static_cast<int>(names_.size()); }
  const std::string& variable_name(int var) const { return names_[var]; }
  const std::vector<std::string>& variable_names() const { return names_; }

  // Terms are merged and zero coefficients dropped.
  void AddConstraint(const LinearExpr& lhs, Sense sense, const Rational& rhs,
                     ConstraintTag tag);
  // var <= expr / divisor, stored as var - expr/divisor <= constant/divisor.
  void AddUpperBound(int var, const LinearExpr& expr, const Rational& divisor,
                     ConstraintTag tag);
  const std::vector<Constraint>& constraints() const { return constraints_; }

  void SetObjective(const LinearExpr& objective);
  // Sorted by variable.
  const std::vector<Term>& objective() const { return objective_; }

  bool operator==(const LpModel& other) const;

 private:
  LpVariant variant_ = LpVariant::kGeneric;
  int n_ = 0;
  int k_ = 0;
  std::vector<std::string> names_;
  std::unordered_map<std::string, int> index_;
  std::vector<Constraint> constraints_;
  std::vector<Term> objective_;
};

FamilyGroup GroupOf(LpVariant variant, const std::string& family);

// One line per constraint: tag, then the relation with exact coefficients.
std::string DumpModel(const LpModel& model);

// Number of constraints per family label.
std::map<std::string, int> FamilyCounts(const LpModel& model);

}  // namespace qcm

#endif  // QCM_LP_MODEL_H_
