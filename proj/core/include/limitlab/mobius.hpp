#pragma once

// PSL(2, C) as orientation-preserving isometries of H^3 and, for matrices
// that preserve the unit disk, of H^2.
//
// The Riemann sphere is identified with S^2 by stereographic projection
// z -> (2 Re z, 2 Im z, |z|^2 - 1) / (|z|^2 + 1), so the unit circle is the
// equator and the unit disk is the southern hemisphere. The circle S^1 that
// bounds H^2 is the equator, with e^{i theta} <-> (cos theta, sin theta).

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <utility>

#include "limitlab/hyperbolic.hpp"

namespace limitlab::mobius {

using Complex = std::complex<double>;
using Mat2 = Eigen::Matrix2cd;

// Normalized to determinant 1.
class Mobius {
 public:
  explicit Mobius(const Mat2& m);
  static Mobius identity() { return Mobius(Mat2::Identity()); }

  const Mat2& matrix() const { return m_; }
  Complex trace() const { return m_.trace(); }
  Mobius inverse() const;
  // Left-action product: apply rhs, then *this.
  Mobius operator*(const Mobius& rhs) const { return Mobius(m_ * rhs.m_); }

  // z -> (a z + b) / (c z + d); infinity is represented by std::nullopt.
  std::optional<Complex> apply(std::optional<Complex> z) const;

  // Attracting fixed point of the map, nullopt for infinity. Only meaningful
  // for loxodromic elements.
  std::optional<Complex> attracting_fixed_point() const;

  // Classification with tolerance on the trace.
  bool is_loxodromic(double tol = 1e-8) const;

 private:
  Mat2 m_;
};

// 4x4 Lorentz matrix of the induced isometry of H^3 (left action on the
// Riemann sphere).
hyp::Mat to_lorentz3(const Mobius& g);

// 3x3 Lorentz matrix for a disk-preserving element; throws if the element
// does not preserve the unit circle to `tol`.
hyp::Mat to_lorentz2(const Mobius& g, double tol = 1e-9);

hyp::Vec stereographic(std::optional<Complex> z);
std::optional<Complex> inverse_stereographic(const hyp::Vec& xi);

// Cayley transform sending the upper half plane to the unit disk.
Mobius cayley();

}  // namespace limitlab::mobius
