#include "limitlab/hyperbolic.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace limitlab::hyp {

namespace {

void require_same_dim(long a, long b, const char* what) {
  if (a != b) {
    throw DimensionMismatch(std::string(what) + ": dimension mismatch (" + std::to_string(a) +
                            " vs " + std::to_string(b) + ")");
  }
}

Mat lorentz_form(int dim) {
  Mat j = Mat::Identity(dim, dim);
  j(0, 0) = -1.0;
  return j;
}

}  // namespace

double minkowski(const Vec& a, const Vec& b) {
  require_same_dim(a.size(), b.size(), "minkowski");
  return -a(0) * b(0) + a.tail(a.size() - 1).dot(b.tail(b.size() - 1));
}

InteriorPoint::InteriorPoint(Vec lorentz) : coords_(std::move(lorentz)) {
  if (coords_.size() < 3) throw DimensionMismatch("InteriorPoint: need n >= 1");
  if (coords_(0) < 0.0) coords_ = -coords_;
  const double q = -minkowski(coords_, coords_);
  // Far from the origin the Minkowski square loses all digits to
  // cancellation; a vector whose computed norm is within rounding of -1 is
  // taken as already normalized.
  const double rounding = 16.0 * static_cast<double>(coords_.size()) * 2.2e-16 * coords_(0) * coords_(0);
  if (std::abs(q - 1.0) <= rounding && std::isfinite(q)) return;
  if (!(q > 0.0) || !std::isfinite(q)) throw Error("InteriorPoint: vector is not timelike");
  coords_ /= std::sqrt(q);
}

InteriorPoint InteriorPoint::origin(int n) {
  Vec v = Vec::Zero(n + 2);
  v(0) = 1.0;
  return InteriorPoint(std::move(v));
}

InteriorPoint InteriorPoint::from_ball(const Vec& ball) {
  const double r2 = ball.squaredNorm();
  if (!(r2 < 1.0)) throw Error("InteriorPoint::from_ball: point not inside the unit ball");
  Vec v(ball.size() + 1);
  v(0) = (1.0 + r2) / (1.0 - r2);
  v.tail(ball.size()) = 2.0 * ball / (1.0 - r2);
  return InteriorPoint(std::move(v));
}

Vec InteriorPoint::ball() const {
  return coords_.tail(coords_.size() - 1) / (1.0 + coords_(0));
}

BoundaryPoint::BoundaryPoint(Vec direction) : dir_(std::move(direction)) {
  if (dir_.size() < 2) throw DimensionMismatch("BoundaryPoint: need n >= 1");
  const double r = dir_.norm();
  if (!(r > 0.0) || !std::isfinite(r)) throw Error("BoundaryPoint: zero or non-finite direction");
  dir_ /= r;
}

Vec BoundaryPoint::null_lift() const {
  Vec v(dir_.size() + 1);
  v(0) = 1.0;
  v.tail(dir_.size()) = dir_;
  return v;
}

BoundaryPoint BoundaryPoint::from_null(const Vec& null_vector) {
  if (!(null_vector(0) > 0.0)) throw Error("BoundaryPoint::from_null: non-positive time component");
  return BoundaryPoint(null_vector.tail(null_vector.size() - 1) / null_vector(0));
}

Mat lorentz_inverse(const Mat& m) {
  const Mat j = lorentz_form(static_cast<int>(m.rows()));
  return j * m.transpose() * j;
}

Isometry::Isometry(Mat matrix) : m_(std::move(matrix)) {
  const long dim = m_.rows();
  if (dim != m_.cols() || dim < 3) throw DimensionMismatch("Isometry: matrix must be square, size >= 3");
  const double scale = std::max(1.0, m_.cwiseAbs().maxCoeff());
  const Mat j = lorentz_form(static_cast<int>(dim));
  const double form_defect = (m_.transpose() * j * m_ - j).cwiseAbs().maxCoeff();
  if (form_defect > kIsometryTolerance * scale * scale) {
    throw Error("Isometry: matrix does not preserve the Minkowski form (defect " +
                std::to_string(form_defect) + ")");
  }
  const double det = m_.determinant();
  if (std::abs(det - 1.0) > kIsometryTolerance * std::pow(scale, static_cast<double>(dim))) {
    throw Error("Isometry: determinant is not +1");
  }
  if (!(m_(0, 0) > 0.0)) throw Error("Isometry: does not preserve time orientation");
}

Isometry Isometry::identity(int n) { return Isometry(Mat::Identity(n + 2, n + 2), Unchecked{}); }

Isometry Isometry::rotation(int n, int i, int j, double angle) {
  if (i == j || i < 0 || j < 0 || i > n || j > n) throw Error("Isometry::rotation: bad coordinate plane");
  Mat m = Mat::Identity(n + 2, n + 2);
  const double c = std::cos(angle), s = std::sin(angle);
  m(1 + i, 1 + i) = c;
  m(1 + i, 1 + j) = -s;
  m(1 + j, 1 + i) = s;
  m(1 + j, 1 + j) = c;
  return Isometry(std::move(m), Unchecked{});
}

Isometry Isometry::boost(int n, int axis, double t) {
  if (axis < 0 || axis > n) throw Error("Isometry::boost: bad axis");
  Mat m = Mat::Identity(n + 2, n + 2);
  const double c = std::cosh(t), s = std::sinh(t);
  m(0, 0) = c;
  m(0, 1 + axis) = s;
  m(1 + axis, 0) = s;
  m(1 + axis, 1 + axis) = c;
  return Isometry(std::move(m), Unchecked{});
}

Isometry Isometry::random(int n, std::mt19937_64& rng, double max_translation) {
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unif(0.0, max_translation);
  const int d = n + 1;
  Mat g(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g(r, c) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr(g);
  Mat q = qr.householderQ();
  if (q.determinant() < 0) q.col(0) = -q.col(0);
  Mat rot = Mat::Identity(n + 2, n + 2);
  rot.bottomRightCorner(d, d) = q;
  const Isometry b = boost(n, 0, unif(rng));
  Mat g2 = Mat::Identity(d, d);
  for (int r = 0; r < d; ++r)
    for (int c = 0; c < d; ++c) g2(r, c) = gauss(rng);
  Eigen::HouseholderQR<Mat> qr2(g2);
  Mat q2 = qr2.householderQ();
  if (q2.determinant() < 0) q2.col(0) = -q2.col(0);
  Mat rot2 = Mat::Identity(n + 2, n + 2);
  rot2.bottomRightCorner(d, d) = q2;
  return Isometry(rot2 * b.matrix() * rot, Unchecked{});
}

Isometry Isometry::inverse() const { return Isometry(lorentz_inverse(m_), Unchecked{}); }

InteriorPoint Isometry::act(const InteriorPoint& p) const {
  require_same_dim(m_.rows(), p.lorentz().size(), "Isometry::act");
  return InteriorPoint(m_ * p.lorentz());
}

BoundaryPoint Isometry::act(const BoundaryPoint& p) const {
  require_same_dim(m_.rows(), p.direction().size() + 1, "Isometry::act");
  return BoundaryPoint::from_null(m_ * p.null_lift());
}

Isometry Isometry::operator*(const Isometry& rhs) const {
  require_same_dim(m_.rows(), rhs.m_.rows(), "Isometry::operator*");
  return Isometry(rhs.m_ * m_, Unchecked{});
}

double Isometry::translation_length() const {
  Eigen::EigenSolver<Mat> es(m_, false);
  double top = 0.0;
  for (long i = 0; i < es.eigenvalues().size(); ++i) top = std::max(top, std::abs(es.eigenvalues()(i)));
  return top > 1.0 ? std::log(top) : 0.0;
}

double distance(const InteriorPoint& x, const InteriorPoint& y) {
  require_same_dim(x.lorentz().size(), y.lorentz().size(), "distance");
  // cosh d = -<x, y> is accurate once d is not small; nearby points use
  // <x-y, x-y> = 4 sinh^2(d/2) instead.
  const double c = -minkowski(x.lorentz(), y.lorentz());
  if (c > 2.0) return std::acosh(c);
  const Vec diff = x.lorentz() - y.lorentz();
  const double q = std::max(0.0, minkowski(diff, diff));
  return 2.0 * std::asinh(0.5 * std::sqrt(q));
}

namespace {

// -<x, (1, xi)> = x_0 - <x_s, xi>, rewritten as 1 / (x_0 + |x_s|) +
// |x_s| |x_s / |x_s| - xi|^2 / 2 on the hyperboloid. The direct difference
// loses all digits when x is far out in the direction of xi.
double boundary_pairing(const InteriorPoint& x, const BoundaryPoint& xi) {
  const Vec& v = x.lorentz();
  const auto spatial = v.tail(v.size() - 1);
  const double r = spatial.norm();
  if (r == 0.0) return v(0);
  return 1.0 / (v(0) + r) + 0.5 * r * (spatial / r - xi.direction()).squaredNorm();
}

}  // namespace

double poisson_kernel(const InteriorPoint& x, const BoundaryPoint& xi) {
  require_same_dim(x.lorentz().size(), xi.direction().size() + 1, "poisson_kernel");
  const Vec b = x.ball();
  if ((b - xi.direction()).norm() < 1e-14) {
    throw NumericError("poisson_kernel: boundary point coincides with the interior point's projection");
  }
  const double pairing = boundary_pairing(x, xi);
  if (!(pairing > 0.0) || !std::isfinite(pairing)) throw NumericError("poisson_kernel: singular kernel");
  return 1.0 / pairing;
}

double busemann(const InteriorPoint& x, const InteriorPoint& x_prime, const BoundaryPoint& xi) {
  require_same_dim(x.lorentz().size(), x_prime.lorentz().size(), "busemann");
  require_same_dim(x.lorentz().size(), xi.direction().size() + 1, "busemann");
  const double a = boundary_pairing(x, xi);
  const double b = boundary_pairing(x_prime, xi);
  if (!(a > 0.0) || !(b > 0.0) || !std::isfinite(a) || !std::isfinite(b)) {
    throw NumericError("busemann: singular Poisson kernel");
  }
  return std::log(a / b);
}

InteriorPoint geodesic_toward(const InteriorPoint& x, const BoundaryPoint& xi, double t) {
  if (t < 0.0) throw Error("geodesic_toward: t must be nonnegative");
  require_same_dim(x.lorentz().size(), xi.direction().size() + 1, "geodesic_toward");
  const Vec lift = xi.null_lift();
  const double pair = minkowski(lift, x.lorentz());  // negative
  const Vec tangent = (lift + pair * x.lorentz()) / std::abs(pair);
  return InteriorPoint(std::cosh(t) * x.lorentz() + std::sinh(t) * tangent);
}

BoundaryPoint radial_projection(const InteriorPoint& x) {
  const Vec spatial = x.lorentz().tail(x.lorentz().size() - 1);
  if (spatial.norm() == 0.0) {
    Vec e = Vec::Zero(spatial.size());
    e(0) = 1.0;
    return BoundaryPoint(std::move(e));
  }
  return BoundaryPoint(spatial);
}

double ball_distance(const Vec& a, const Vec& b) {
  require_same_dim(a.size(), b.size(), "ball_distance");
  const double num = 2.0 * (a - b).squaredNorm();
  const double den = (1.0 - a.squaredNorm()) * (1.0 - b.squaredNorm());
  return std::acosh(1.0 + num / den);
}

}  // namespace limitlab::hyp
