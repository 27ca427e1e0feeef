#include "qcm/lp_model.h"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace qcm {

const char* LpVariantName(LpVariant variant) {
  switch (variant) {
    case LpVariant::kSimple: return "ranking";
    case LpVariant::kTightened: return "tightened";
    case LpVariant::kOddGirth: return "oddgirth";
    case LpVariant::kFRanking: return "franking";
    case LpVariant::kGeneric: return "generic";
  }
  return "?";
}

const char* FamilyGroupName(FamilyGroup group) {
  switch (group) {
    case FamilyGroup::kFunction: return "function";
    case FamilyGroup::kPinning: return "pinning";
    case FamilyGroup::kUnmatched: return "unmatched";
    case FamilyGroup::kNoBackup: return "nobackup";
    case FamilyGroup::kBackup: return "backup";
    case FamilyGroup::kAggregation: return "aggregation";
    case FamilyGroup::kObjective: return "objective";
    case FamilyGroup::kOther: return "other";
  }
  return "?";
}

std::string ConstraintTag::ToString() const {
  std::string out = family;
  for (int i : indices) out += "." + std::to_string(i);
  return out;
}

LinearExpr& LinearExpr::Add(int var, const Rational& coef) {
  if (coef == 0) return *this;
  auto [it, inserted] = terms_.emplace(var, coef);
  if (!inserted) {
    it->second += coef;
    if (it->second == 0) terms_.erase(it);
  }
  return *this;
}

int LpModel::Variable(const std::string& name) {
  auto [it, inserted] = index_.emplace(name, static_cast<int>(names_.size()));
  if (inserted) names_.push_back(name);
  return it->second;
}

int LpModel::Find(const std::string& name) const {
  auto it = index_.find(name);
  return it == index_.end() ? -1 : it->second;
}

void LpModel::AddConstraint(const LinearExpr& lhs, Sense sense, const Rational& rhs,
                            ConstraintTag tag) {
  Constraint c;
  for (const auto& [var, coef] : lhs.terms()) {
    if (var < 0 || var >= variable_count()) {
      throw std::out_of_range("constraint references an undeclared variable");
    }
    c.terms.push_back({var, coef});
  }
  c.sense = sense;
  c.rhs = rhs - lhs.constant();
  c.tag = std::move(tag);
  constraints_.push_back(std::move(c));
}

void LpModel::AddUpperBound(int var, const LinearExpr& expr, const Rational& divisor,
                            ConstraintTag tag) {
  LinearExpr row;
  row.Add(var, 1);
  for (const auto& [v, coef] : expr.terms()) row.Add(v, -coef / divisor);
  AddConstraint(row, Sense::kLessEqual, expr.constant() / divisor, std::move(tag));
}

void LpModel::SetObjective(const LinearExpr& objective) {
  objective_.clear();
  for (const auto& [var, coef] : objective.terms()) objective_.push_back({var, coef});
}

bool LpModel::operator==(const LpModel& other) const {
  return variant_ == other.variant_ && n_ == other.n_ && k_ == other.k_ &&
         names_ == other.names_ && constraints_ == other.constraints_ &&
         objective_ == other.objective_;
}

FamilyGroup GroupOf(LpVariant variant, const std::string& family) {
  static const std::map<std::string, FamilyGroup> kGroups = {
      {"g_mono_first", FamilyGroup::kFunction},
      {"g_mono_second", FamilyGroup::kFunction},
      {"h_mono_first", FamilyGroup::kFunction},
      {"h_mono_second", FamilyGroup::kFunction},
      {"g_mono", FamilyGroup::kFunction},
      {"h_mono", FamilyGroup::kFunction},
      {"gain_cap", FamilyGroup::kFunction},
      {"gain_floor", FamilyGroup::kFunction},
      {"h_zero", FamilyGroup::kPinning},
      {"unmatched", FamilyGroup::kUnmatched},
      {"nobackup_later", FamilyGroup::kNoBackup},
      {"nobackup_earlier", FamilyGroup::kNoBackup},
      {"nobackup_adjacent", FamilyGroup::kNoBackup},
      {"tight_later", FamilyGroup::kNoBackup},
      {"tight_earlier", FamilyGroup::kNoBackup},
      {"tight_adjacent", FamilyGroup::kNoBackup},
      {"backup_gap", FamilyGroup::kBackup},
      {"backup_tie", FamilyGroup::kBackup},
      {"backup_earlier", FamilyGroup::kBackup},
      {"backup_adjacent", FamilyGroup::kBackup},
      {"agg_unmatched", FamilyGroup::kAggregation},
      {"agg_nobackup", FamilyGroup::kAggregation},
      {"agg_backup", FamilyGroup::kAggregation},
      {"f_unmatched", FamilyGroup::kUnmatched},
      {"f_passive_nobackup", FamilyGroup::kNoBackup},
      {"f_active_nobackup", FamilyGroup::kNoBackup},
      {"f_active_nobackup_eq", FamilyGroup::kNoBackup},
      {"f_passive_passive", FamilyGroup::kBackup},
      {"f_passive_active", FamilyGroup::kBackup},
      {"f_active_active", FamilyGroup::kBackup},
      {"f_agg_passive", FamilyGroup::kAggregation},
      {"f_agg_active_unmatched", FamilyGroup::kAggregation},
      {"f_agg_active_nobackup", FamilyGroup::kAggregation},
      {"f_agg_active_backup", FamilyGroup::kAggregation},
      {"objective_split", FamilyGroup::kObjective},
  };
  if (variant == LpVariant::kGeneric) return FamilyGroup::kOther;
  auto it = kGroups.find(family);
  return it == kGroups.end() ? FamilyGroup::kOther : it->second;
}

namespace {

const char* SenseText(Sense sense) {
  switch (sense) {
    case Sense::kLessEqual: return "<=";
    case Sense::kGreaterEqual: return ">=";
    case Sense::kEqual: return "=";
  }
  return "?";
}

}  // namespace

std::string DumpModel(const LpModel& model) {
  std::ostringstream out;
  out << "# model " << LpVariantName(model.variant()) << " n=" << model.n();
  if (model.variant() == LpVariant::kOddGirth) out << " k=" << model.k();
  out << " vars=" << model.variable_count()
      << " rows=" << model.constraints().size() << "\n";
  out << "max:";
  for (const Term& t : model.objective()) {
    out << " " << (t.coef < 0 ? "- " : "+ ") << abs(t.coef) << " "
        << model.variable_name(t.var);
  }
  out << "\n";
  for (const Constraint& c : model.constraints()) {
    out << "[" << FamilyGroupName(GroupOf(model.variant(), c.tag.family)) << " "
        << c.tag.ToString() << "]";
    for (const Term& t : c.terms) {
      out << " " << (t.coef < 0 ? "- " : "+ ") << abs(t.coef) << " "
          << model.variable_name(t.var);
    }
    out << " " << SenseText(c.sense) << " " << c.rhs << "\n";
  }
  return out.str();
}

std::map<std::string, int> FamilyCounts(const LpModel& model) {
  std::map<std::string, int> counts;
  for (const Constraint& c : model.constraints()) ++counts[c.tag.family];
  return counts;
}

}  // namespace qcm
