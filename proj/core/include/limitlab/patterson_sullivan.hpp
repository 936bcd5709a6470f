#pragma once

// Truncated Patterson-Sullivan measures: atomic measures on S^n supported on
// radial projections of orbit points, evaluated at s slightly above the
// estimated critical exponent.

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "limitlab/groups.hpp"

namespace limitlab::ps {

using TestFunction = std::function<double(const hyp::Vec&)>;

struct AtomicBoundaryMeasure {
  int n = 0;
  std::vector<hyp::Vec> points;
  std::vector<double> weights;
  std::vector<Word> words;
  hyp::InteriorPoint basepoint = hyp::InteriorPoint::origin(1);
  hyp::InteriorPoint reference = hyp::InteriorPoint::origin(1);  // x0
  double s = 0.0;
  double delta_hat = 0.0;
  int max_length = 0;

  std::size_t size() const { return points.size(); }
  double total_mass() const;
  double integrate(const TestFunction& f) const;
};

// Atoms at the projections of x0.gamma over the word ball, weighted by
// e^{-s d(x, x0 gamma)} / sum_gamma e^{-s d(x0, x0 gamma)}. Requires
// s > delta_hat.
AtomicBoundaryMeasure ps_measure(const groups::WordBall& ball, const hyp::InteriorPoint& x, double s, double delta_hat);
AtomicBoundaryMeasure ps_measure(const groups::GroupPresentation& g, const hyp::InteriorPoint& x,
                                 const hyp::InteriorPoint& x0, double s, int max_length, double delta_hat);

// mu_{x'} = e^{-delta D(x', x, .)} mu_x.
AtomicBoundaryMeasure translate_basepoint(const AtomicBoundaryMeasure& mu, const hyp::InteriorPoint& x_prime);

// max_f |int f(xi.g) dmu_x - int f e^{delta D(x, xg, .)} dmu_x| / (1 + |int f dmu_x|).
double transport_defect(const AtomicBoundaryMeasure& mu, const hyp::Isometry& g, const std::vector<TestFunction>& tests);

// Tent functions max(0, 1 - |xi - c| / radius).
std::vector<TestFunction> lipschitz_bumps(const std::vector<hyp::Vec>& centers, double radius);

struct MassSample {
  hyp::InteriorPoint point = hyp::InteriorPoint::origin(1);
  double mass = 0.0;
  // |Delta Phi - delta (n - delta) Phi| / Phi with Delta the positive
  // hyperbolic Laplacian; empty when skipped.
  std::optional<double> laplacian_defect;
  std::string note;
};

// Total mass Phi(y) = |mu_y| at each site; with `stencil` set, also the
// Laplacian check from a 4th-order geodesic stencil at +-h, +-2h.
std::vector<MassSample> mass_profile(const groups::WordBall& ball, double s, double delta_hat,
                                     const std::vector<hyp::InteriorPoint>& sites, std::optional<double> stencil = 0.01);

}  // namespace limitlab::ps
