#include "limitlab/patterson_sullivan.hpp"

#include <cmath>

namespace limitlab::ps {

namespace {

double phi(const groups::WordBall& ball, const hyp::InteriorPoint& y, double s, double z) {
  double sum = 0.0;
  for (std::size_t i = 0; i < ball.size(); ++i) {
    sum += std::exp(-s * hyp::distance(y, hyp::InteriorPoint(ball.orbit_lorentz(i))));
  }
  return sum / z;
}

double normalizer(const groups::WordBall& ball, double s) {
  double z = 0.0;
  for (double d : ball.displacements()) z += std::exp(-s * d);
  return z;
}

}  // namespace

double AtomicBoundaryMeasure::total_mass() const {
  double m = 0.0;
  for (double w : weights) m += w;
  return m;
}

double AtomicBoundaryMeasure::integrate(const TestFunction& f) const {
  double sum = 0.0;
  for (std::size_t i = 0; i < points.size(); ++i) sum += weights[i] * f(points[i]);
  return sum;
}

AtomicBoundaryMeasure ps_measure(const groups::WordBall& ball, const hyp::InteriorPoint& x, double s, double delta_hat) {
  if (!(s > delta_hat)) {
    throw NumericError("ps_measure: series near divergence; choose s > delta_hat (s = " + std::to_string(s) +
                       ", delta_hat = " + std::to_string(delta_hat) + ")");
  }
  if (x.n() != ball.n()) throw DimensionMismatch("ps_measure: basepoint dimension differs from the ball");
  AtomicBoundaryMeasure mu;
  mu.n = ball.n();
  mu.basepoint = x;
  mu.reference = ball.basepoint();
  mu.s = s;
  mu.delta_hat = delta_hat;
  mu.max_length = ball.max_length();
  const double z = normalizer(ball, s);
  mu.points.reserve(ball.size());
  mu.weights.reserve(ball.size());
  mu.words = ball.words();
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const hyp::InteriorPoint y(ball.orbit_lorentz(i));
    mu.points.push_back(hyp::radial_projection(y).direction());
    mu.weights.push_back(std::exp(-s * hyp::distance(x, y)) / z);
  }
  return mu;
}

AtomicBoundaryMeasure ps_measure(const groups::GroupPresentation& g, const hyp::InteriorPoint& x,
                                 const hyp::InteriorPoint& x0, double s, int max_length, double delta_hat) {
  groups::EnumerationOptions opt;
  opt.store_elements = false;
  return ps_measure(groups::enumerate_ball(g, max_length, x0, opt), x, s, delta_hat);
}

AtomicBoundaryMeasure translate_basepoint(const AtomicBoundaryMeasure& mu, const hyp::InteriorPoint& x_prime) {
  AtomicBoundaryMeasure out = mu;
  out.basepoint = x_prime;
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const hyp::BoundaryPoint xi(mu.points[i]);
    out.weights[i] = mu.weights[i] * std::exp(-mu.delta_hat * hyp::busemann(x_prime, mu.basepoint, xi));
  }
  return out;
}

double transport_defect(const AtomicBoundaryMeasure& mu, const hyp::Isometry& g, const std::vector<TestFunction>& tests) {
  if (g.n() != mu.n) throw DimensionMismatch("transport_defect: isometry dimension differs from the measure");
  const hyp::InteriorPoint xg = g.act(mu.basepoint);
  std::vector<hyp::Vec> pushed(mu.size());
  std::vector<double> density(mu.size());
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const hyp::BoundaryPoint xi(mu.points[i]);
    pushed[i] = g.act(xi).direction();
    density[i] = std::exp(mu.delta_hat * hyp::busemann(mu.basepoint, xg, xi));
  }
  double worst = 0.0;
  for (const auto& f : tests) {
    double lhs = 0.0, rhs = 0.0, plain = 0.0;
    for (std::size_t i = 0; i < mu.size(); ++i) {
      const double fi = f(mu.points[i]);
      lhs += mu.weights[i] * f(pushed[i]);
      rhs += mu.weights[i] * fi * density[i];
      plain += mu.weights[i] * fi;
    }
    worst = std::max(worst, std::abs(lhs - rhs) / (1.0 + std::abs(plain)));
  }
  return worst;
}

std::vector<TestFunction> lipschitz_bumps(const std::vector<hyp::Vec>& centers, double radius) {
  if (!(radius > 0.0)) throw Error("lipschitz_bumps: radius must be positive");
  std::vector<TestFunction> out;
  for (const auto& c : centers) {
    out.emplace_back([c, radius](const hyp::Vec& xi) { return std::max(0.0, 1.0 - (xi - c).norm() / radius); });
  }
  return out;
}

std::vector<MassSample> mass_profile(const groups::WordBall& ball, double s, double delta_hat,
                                     const std::vector<hyp::InteriorPoint>& sites, std::optional<double> stencil) {
  if (stencil && (*stencil < 1e-3 || *stencil > 1e-1)) {
    throw Error("mass_profile: stencil spacing must lie in [1e-3, 1e-1]");
  }
  const double z = normalizer(ball, s);
  const int n = ball.n();
  std::vector<MassSample> out;
  for (const auto& y : sites) {
    MassSample m;
    m.point = y;
    m.mass = phi(ball, y, s, z);
    if (!stencil) {
      m.note = "laplacian check not requested";
    } else if (ball.size() == 1) {
      m.note = "one-atom measure; laplacian check skipped";
    } else {
      const double h = *stencil;
      const hyp::Vec& yl = y.lorentz();
      // Orthonormal tangent frame at y by Minkowski Gram-Schmidt.
      std::vector<hyp::Vec> frame;
      for (int k = 1; k <= n + 1; ++k) {
        hyp::Vec v = hyp::Vec::Zero(n + 2);
        v(k) = 1.0;
        v += hyp::minkowski(v, yl) * yl;
        for (const auto& u : frame) v -= hyp::minkowski(v, u) * u;
        frame.push_back(v / std::sqrt(hyp::minkowski(v, v)));
      }
      double second = 0.0;
      for (const auto& v : frame) {
        auto at = [&](double t) { return phi(ball, hyp::InteriorPoint(std::cosh(t) * yl + std::sinh(t) * v), s, z); };
        second += (-at(2 * h) + 16 * at(h) - 30 * m.mass + 16 * at(-h) - at(-2 * h)) / (12 * h * h);
      }
      const double lap = -second;
      m.laplacian_defect = std::abs(lap - delta_hat * (n - delta_hat) * m.mass) / m.mass;
    }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace limitlab::ps
