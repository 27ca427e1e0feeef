// Second, declaratively written enumeration of the discretized LPs: every
// family is an index-set product filtered by its quantifier predicate.
#ifndef QCM_TESTS_LP_REFERENCE_H_
#define QCM_TESTS_LP_REFERENCE_H_

#include <map>
#include <string>
#include <vector>

#include "qcm/lp_model.h"

namespace reference {

struct Row {
  std::string family;
  std::map<std::string, qcm::Rational> lhs;  // no zero entries
  qcm::Sense sense = qcm::Sense::kLessEqual;
  qcm::Rational rhs;

  // Family-free canonical text, used for multiset comparison.
  std::string Canonical() const;
};

struct Model {
  std::vector<Row> rows;
  std::map<std::string, qcm::Rational> objective;
};

Model Enumerate(qcm::LpVariant variant, int n, int k = 0);

// The factory model rewritten into the same row form.
Model FromFactory(const qcm::LpModel& model);

}  // namespace reference

#endif  // QCM_TESTS_LP_REFERENCE_H_
