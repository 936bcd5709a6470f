#pragma once

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

namespace limitlab {

using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;

// Dense matrix together with the labels of its basis (group words, Fourier
// modes or form harmonics) and the truncation that produced it.
struct TruncatedOperator {
  CMat matrix;
  std::vector<std::string> labels;
  std::string basis;
  int truncation = 0;
  std::optional<Eigen::VectorXd> xi;
  bool truncation_warning = false;

  Eigen::Index dim() const { return matrix.rows(); }
  void validate() const;
};

Eigen::VectorXd singular_values(const CMat& m);
double operator_norm(const CMat& m);

}  // namespace limitlab
