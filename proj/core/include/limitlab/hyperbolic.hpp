#pragma once

// Hyperboloid model of H^{n+1} and its boundary sphere S^n.
//
// Interior points are unit future-timelike vectors of R^{n+1,1}; the time
// coordinate sits at index 0 and the Minkowski form is
//   <x, y> = -x_0 y_0 + x_1 y_1 + ... + x_{n+1} y_{n+1}.
// Boundary points are unit vectors of R^{n+1} (ball-model sphere); their null
// lift is (1, xi).
//
// Group elements act on the right: for a word w = s_1 s_2 ... s_k the matrix
// is M(w) = M(s_k) ... M(s_1), so that p.(uv) = (p.u).v holds with
// p.g := M(g) p. Isometry::operator* implements this reversed composition.

#include <Eigen/Dense>

#include <cstddef>
#include <random>

#include "limitlab/error.hpp"

namespace limitlab::hyp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline constexpr double kPointTolerance = 1e-12;
inline constexpr double kIsometryTolerance = 1e-10;

double minkowski(const Vec& a, const Vec& b);

class InteriorPoint {
 public:
  // Takes Lorentz coordinates (time first) and re-normalizes onto the
  // upper sheet of the hyperboloid.
  explicit InteriorPoint(Vec lorentz);

  static InteriorPoint origin(int n);
  // Poincare-ball coordinates, |b| < 1.
  static InteriorPoint from_ball(const Vec& ball);

  int n() const { return static_cast<int>(coords_.size()) - 2; }
  const Vec& lorentz() const { return coords_; }
  Vec ball() const;

 private:
  Vec coords_;
};

class BoundaryPoint {
 public:
  explicit BoundaryPoint(Vec direction);

  int n() const { return static_cast<int>(dir_.size()) - 1; }
  const Vec& direction() const { return dir_; }
  Vec null_lift() const;

  // Inverse of null_lift up to scale; the time component must be positive.
  static BoundaryPoint from_null(const Vec& null_vector);

 private:
  Vec dir_;
};

class Isometry {
 public:
  // Validates the Lorentz conditions (form preservation, det = +1, time
  // orientation) to kIsometryTolerance relative to the matrix scale.
  explicit Isometry(Mat matrix);

  static Isometry identity(int n);
  // Euclidean rotation of the ball by `angle` in the (i, j) coordinate plane
  // of R^{n+1} (0-based spatial indices).
  static Isometry rotation(int n, int i, int j, double angle);
  // Hyperbolic translation by distance t along spatial axis `axis`,
  // moving the origin toward +e_axis.
  static Isometry boost(int n, int axis, double t);
  static Isometry random(int n, std::mt19937_64& rng, double max_translation = 2.0);
  // Skips validation; for products of already-validated elements whose
  // entries are too large for an absolute form check.
  static Isometry trusted(Mat matrix) { return Isometry(std::move(matrix), Unchecked{}); }

  int n() const { return static_cast<int>(m_.rows()) - 2; }
  const Mat& matrix() const { return m_; }

  Isometry inverse() const;

  // p.g
  InteriorPoint act(const InteriorPoint& p) const;
  BoundaryPoint act(const BoundaryPoint& p) const;

  // Right-action product: (*this) then `rhs`.
  Isometry operator*(const Isometry& rhs) const;

  // Hyperbolic translation length from the top eigenvalue (0 for
  // elliptic/parabolic up to rounding).
  double translation_length() const;

 private:
  struct Unchecked {};
  Isometry(Mat matrix, Unchecked) : m_(std::move(matrix)) {}
  Mat m_;
};

// Lorentz inverse J M^T J.
Mat lorentz_inverse(const Mat& m);

double distance(const InteriorPoint& x, const InteriorPoint& y);

// Ball-model Poisson kernel (1 - |x|^2) / |x - xi|^2, evaluated through the
// Lorentz pairing -1 / <x, (1, xi)>.
double poisson_kernel(const InteriorPoint& x, const BoundaryPoint& xi);

// Busemann cocycle D(x, x', xi) = lim_{z -> xi} d(x, z) - d(x', z)
//                              = log(P(x', xi) / P(x, xi)).
double busemann(const InteriorPoint& x, const InteriorPoint& x_prime, const BoundaryPoint& xi);

// Point at distance t from x along the geodesic ray toward xi.
InteriorPoint geodesic_toward(const InteriorPoint& x, const BoundaryPoint& xi, double t);

// Radial projection of a ball-model point onto S^n. The origin has no
// direction; it is sent to e_1.
BoundaryPoint radial_projection(const InteriorPoint& x);

// Distance formula in the ball model, used to cross-check the Lorentz one.
double ball_distance(const Vec& a, const Vec& b);

}  // namespace limitlab::hyp
