#include <doctest.h>

#include <cmath>
#include <numbers>

#include "limitlab/sphere.hpp"

using namespace limitlab;

namespace {

double integrate(const sphere::Quadrature& q, double (*f)(const hyp::Vec&)) {
  double s = 0.0;
  for (std::size_t i = 0; i < q.points.size(); ++i) s += q.weights[i] * f(q.points[i]);
  return s;
}

}  // namespace

TEST_CASE("product quadrature integrates polynomials exactly") {
  const auto q = sphere::product_quadrature(12);
  const double pi = std::numbers::pi;
  CHECK(integrate(q, [](const hyp::Vec&) { return 1.0; }) == doctest::Approx(4.0 * pi));
  CHECK(integrate(q, [](const hyp::Vec& p) { return p(0) * p(0); }) == doctest::Approx(4.0 * pi / 3.0));
  CHECK(integrate(q, [](const hyp::Vec& p) { return std::pow(p(0) * p(1) * p(2), 2); }) == doctest::Approx(4.0 * pi / 105.0));
  CHECK(integrate(q, [](const hyp::Vec& p) { return std::pow(p(2), 12); }) == doctest::Approx(4.0 * pi / 13.0));
  CHECK(std::abs(integrate(q, [](const hyp::Vec& p) { return p(0) * std::pow(p(2), 6); })) < 1e-14);
}

TEST_CASE("form basis is orthonormal") {
  const auto b = sphere::form_basis(6);
  const Eigen::Index nodes = static_cast<Eigen::Index>(b.quad.points.size());
  REQUIRE(b.fields.rows() == 3 * nodes);
  REQUIRE(b.fields.cols() == 2 * b.size());
  Eigen::VectorXd w(3 * nodes);
  for (Eigen::Index i = 0; i < nodes; ++i) w.segment(3 * i, 3).setConstant(b.quad.weights[static_cast<std::size_t>(i)]);
  const Eigen::MatrixXd gram = b.fields.transpose() * w.asDiagonal() * b.fields;
  CHECK((gram - Eigen::MatrixXd::Identity(gram.rows(), gram.cols())).cwiseAbs().maxCoeff() < 1e-12);
  // Fields are tangent.
  for (Eigen::Index i = 0; i < nodes; ++i)
    CHECK((b.quad.points[static_cast<std::size_t>(i)].transpose() * b.fields.middleRows(3 * i, 3)).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(b.size() == 6 * 8);
  CHECK_THROWS(sphere::form_basis(6, 10));
}

TEST_CASE("signature operator") {
  const auto K = sphere::sphere_signature_operator(5);
  CHECK(K.dim() == 2 * 5 * 7);
  REQUIRE(K.gamma.has_value());
  CHECK(K.gamma->sum() == 0.0);
  CHECK(K.anticommutator_defect() == 0.0);
  CHECK(K.square_defect() == 0.0);
  CHECK(K.selfadjoint_defect() == 0.0);
}

TEST_CASE("pullback by isometries") {
  const int l = 8;
  const auto id = sphere::moebius_pullback(l, hyp::Isometry::identity(2));
  CHECK((id.matrix - CMat::Identity(id.dim(), id.dim())).cwiseAbs().maxCoeff() < 1e-12);
  // Rotations preserve each degree l and commute with F.
  const auto R = sphere::moebius_pullback(l, hyp::Isometry::rotation(2, 0, 1, 0.4) * hyp::Isometry::rotation(2, 1, 2, 1.1));
  CHECK(sphere::commutator_defect(R, l, l) < 1e-12);
  CHECK((R.matrix.adjoint() * R.matrix - CMat::Identity(R.dim(), R.dim())).cwiseAbs().maxCoeff() < 1e-12);
  // Boosts mix degrees; the interior defect shrinks with the truncation.
  const auto B = hyp::Isometry::boost(2, 2, 0.3);
  const double d8 = sphere::commutator_defect(sphere::moebius_pullback(8, B), 8, 4);
  const double d12 = sphere::commutator_defect(sphere::moebius_pullback(12, B), 12, 6);
  CHECK(d12 < d8);
  CHECK(d8 < 1e-5);
  CHECK(sphere::interior_indices(8, 4).size() == 2u * 4u * 6u);
}
