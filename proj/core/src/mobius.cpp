#include "limitlab/mobius.hpp"

#include <cmath>

namespace limitlab::mobius {

namespace {

// Hermitian matrix [[t+Z, x+iy], [x-iy, t-Z]] for Lorentz vector (t, x, y, Z).
Mat2 hermitian(const hyp::Vec& v) {
  Mat2 h;
  h(0, 0) = Complex(v(0) + v(3), 0.0);
  h(1, 1) = Complex(v(0) - v(3), 0.0);
  h(0, 1) = Complex(v(1), v(2));
  h(1, 0) = Complex(v(1), -v(2));
  return h;
}

hyp::Vec from_hermitian(const Mat2& h) {
  hyp::Vec v(4);
  v(0) = 0.5 * (h(0, 0).real() + h(1, 1).real());
  v(3) = 0.5 * (h(0, 0).real() - h(1, 1).real());
  v(1) = h(0, 1).real();
  v(2) = h(0, 1).imag();
  return v;
}

}  // namespace

Mobius::Mobius(const Mat2& m) {
  const Complex det = m.determinant();
  if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det))) throw Error("Mobius: singular matrix");
  m_ = m / std::sqrt(det);
}

Mobius Mobius::inverse() const {
  Mat2 inv;
  inv << m_(1, 1), -m_(0, 1), -m_(1, 0), m_(0, 0);
  return Mobius(inv);
}

std::optional<Complex> Mobius::apply(std::optional<Complex> z) const {
  const Complex a = m_(0, 0), b = m_(0, 1), c = m_(1, 0), d = m_(1, 1);
  if (!z) {
    if (c == Complex(0.0)) return std::nullopt;
    return a / c;
  }
  const Complex den = c * *z + d;
  if (den == Complex(0.0)) return std::nullopt;
  return (a * *z + b) / den;
}

bool Mobius::is_loxodromic(double tol) const {
  const Complex t = trace();
  if (std::abs(t * t - 4.0) < tol) return false;  // parabolic or identity
  if (std::abs(t.imag()) < tol && std::abs(t.real()) < 2.0 + tol) return false;  // elliptic
  return true;
}

std::optional<Complex> Mobius::attracting_fixed_point() const {
  // Eigenvector of the eigenvalue with the larger modulus.
  const Complex t = trace();
  const Complex disc = std::sqrt(t * t - 4.0);
  Complex lam = 0.5 * (t + disc);
  if (std::abs(0.5 * (t - disc)) > std::abs(lam)) lam = 0.5 * (t - disc);
  const Complex a = m_(0, 0), b = m_(0, 1), c = m_(1, 0), d = m_(1, 1);
  // (a - lam) u + b v = 0 and c u + (d - lam) v = 0; use the better row.
  Complex u, v;
  if (std::abs(b) + std::abs(a - lam) >= std::abs(c) + std::abs(d - lam)) {
    u = -b;
    v = a - lam;
  } else {
    u = d - lam;
    v = -c;
  }
  if (std::abs(v) < 1e-300 * std::abs(u)) return std::nullopt;
  return u / v;
}

hyp::Mat to_lorentz3(const Mobius& g) {
  hyp::Mat l(4, 4);
  const Mat2& a = g.matrix();
  for (int j = 0; j < 4; ++j) {
    hyp::Vec e = hyp::Vec::Zero(4);
    e(j) = 1.0;
    l.col(j) = from_hermitian(a * hermitian(e) * a.adjoint());
  }
  return l;
}

hyp::Mat to_lorentz2(const Mobius& g, double tol) {
  const hyp::Mat l = to_lorentz3(g);
  const double scale = l.cwiseAbs().maxCoeff();
  double leak = std::abs(l(3, 3) - 1.0);
  for (int i = 0; i < 3; ++i) leak = std::max({leak, std::abs(l(3, i)), std::abs(l(i, 3))});
  if (leak > tol * std::max(1.0, scale)) throw Error("to_lorentz2: element does not preserve the unit disk");
  return l.topLeftCorner(3, 3);
}

hyp::Vec stereographic(std::optional<Complex> z) {
  hyp::Vec v(3);
  if (!z) {
    v << 0.0, 0.0, 1.0;
    return v;
  }
  const double r2 = std::norm(*z);
  v << 2.0 * z->real(), 2.0 * z->imag(), r2 - 1.0;
  return v / (r2 + 1.0);
}

std::optional<Complex> inverse_stereographic(const hyp::Vec& xi) {
  const double den = 1.0 - xi(2);
  if (std::abs(den) < 1e-300) return std::nullopt;
  return Complex(xi(0) / den, xi(1) / den);
}

Mobius cayley() {
  Mat2 c;
  c << Complex(1.0, 0.0), Complex(0.0, -1.0), Complex(1.0, 0.0), Complex(0.0, 1.0);
  return Mobius(c);
}

}  // namespace limitlab::mobius
