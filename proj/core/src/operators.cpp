#include "limitlab/operators.hpp"

#include <set>

#include "limitlab/error.hpp"

namespace limitlab {

void TruncatedOperator::validate() const {
  if (matrix.rows() != matrix.cols()) throw Error("TruncatedOperator: matrix is not square");
  if (static_cast<Eigen::Index>(labels.size()) != matrix.rows()) throw Error("TruncatedOperator: label count mismatch");
  if (std::set<std::string>(labels.begin(), labels.end()).size() != labels.size()) {
    throw Error("TruncatedOperator: duplicate basis labels");
  }
}

Eigen::VectorXd singular_values(const CMat& m) {
  if (m.size() == 0) return Eigen::VectorXd();
  Eigen::BDCSVD<CMat> svd(m);
  return svd.singularValues();
}

double operator_norm(const CMat& m) {
  const Eigen::VectorXd s = singular_values(m);
  return s.size() ? s(0) : 0.0;
}

}  // namespace limitlab
