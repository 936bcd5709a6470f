#pragma once

// Mid-degree signature operator on S^2 truncated to spherical harmonic
// degree l_max. One-forms are represented as tangent vector fields in R^3
// through the round metric.
//
// Basis per (l, m), 1 <= l <= l_max: e = dY_lm / sqrt(l(l+1)) (exact) and
// c = *e (co-exact), with real orthonormal Y_lm. The module is written in
// the eigenbasis u+- = (e -+ i c) / sqrt(2) of gamma = i *, so gamma is
// diagonal and F (= +1 on exact, -1 on co-exact) swaps u+ and u-.

#include <vector>

#include "limitlab/hyperbolic.hpp"
#include "limitlab/kcycles.hpp"
#include "limitlab/operators.hpp"

namespace limitlab::sphere {

struct Quadrature {
  std::vector<hyp::Vec> points;  // unit vectors in R^3
  std::vector<double> weights;   // sum to 4 pi
  int degree = 0;                // exact for polynomials of this total degree
};

// Gauss-Legendre in cos(theta) times a uniform grid in phi, exact to
// `degree` (which must be at least 2 l_max + 2 for the harmonic products).
Quadrature product_quadrature(int degree);

struct HarmonicLabel {
  int l = 0;
  int m = 0;
};

// Orthonormal basis of exact and co-exact 1-forms evaluated at the
// quadrature nodes. Column j of `fields` holds the 3 * nodes stacked vectors
// of basis field j; exact fields come first, then their * images, both in
// (l, m) order.
struct FormBasis {
  int l_max = 0;
  Quadrature quad;
  std::vector<HarmonicLabel> harmonics;
  Eigen::MatrixXd fields;

  Eigen::Index size() const { return static_cast<Eigen::Index>(harmonics.size()); }
};

FormBasis form_basis(int l_max, int quadrature_degree = -1);

kc::FiniteKCycle sphere_signature_operator(int l_max);

// Matrix of the pullback W -> Dg^T W(g(p)) of the boundary action of g on
// one-forms, in the u+- basis of sphere_signature_operator.
TruncatedOperator moebius_pullback(int l_max, const hyp::Isometry& g, int quadrature_degree = -1);

// Operator norm of [F, P] restricted to harmonics with l <= l_block.
double commutator_defect(const TruncatedOperator& pullback, int l_max, int l_block);

// Index set of the u+- basis with l <= l_block.
std::vector<Eigen::Index> interior_indices(int l_max, int l_block);

}  // namespace limitlab::sphere
