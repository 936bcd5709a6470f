#include <doctest.h>

#include <cmath>
#include <numbers>

#include "limitlab/groups.hpp"
#include "limitlab/patterson_sullivan.hpp"

using namespace limitlab;

namespace {

// Normalized arc length on S^1: an exact conformal density of dimension 1
// for every isometry of H^2, sampled at M midpoints.
ps::AtomicBoundaryMeasure lebesgue(int M) {
  ps::AtomicBoundaryMeasure mu;
  mu.n = 1;
  mu.delta_hat = 1.0;
  mu.s = 1.0;
  for (int k = 0; k < M; ++k) {
    const double t = 2.0 * std::numbers::pi * (k + 0.5) / M;
    mu.points.push_back((hyp::Vec(2) << std::cos(t), std::sin(t)).finished());
    mu.weights.push_back(1.0 / M);
    mu.words.emplace_back();
  }
  return mu;
}

}  // namespace

TEST_CASE("atom weights follow the orbit sum") {
  const auto g = groups::schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  const auto ball = groups::enumerate_ball(g, 4, x0);
  const double s = 0.6;
  const auto mu = ps::ps_measure(ball, x0, s, 0.43);
  double z = 0.0;
  for (std::size_t i = 0; i < ball.size(); ++i) z += std::exp(-s * ball.displacement(i));
  for (std::size_t i : {1u, 7u, 100u}) CHECK(mu.weights[i] == doctest::Approx(std::exp(-s * ball.displacement(i)) / z));
  CHECK(mu.total_mass() == doctest::Approx(1.0));
  CHECK(mu.integrate([](const hyp::Vec&) { return 2.0; }) == doctest::Approx(2.0));
  CHECK_THROWS(ps::ps_measure(ball, x0, 0.4, 0.43));
}

TEST_CASE("basepoint change matches the direct construction on deep atoms") {
  const auto g = groups::schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  const auto ball = groups::enumerate_ball(g, 7, x0);
  const double s = 0.5;
  const auto xp = hyp::InteriorPoint::from_ball((hyp::Vec(3) << 0.2, -0.3, 0.1).finished());
  const auto mu = ps::ps_measure(ball, x0, s, s - 1e-12);
  const auto direct = ps::ps_measure(ball, xp, s, s - 1e-12);
  const auto moved = ps::translate_basepoint(mu, xp);
  for (std::size_t i = 0; i < ball.size(); ++i)
    if (ball.length(i) == 7) CHECK(moved.weights[i] == doctest::Approx(direct.weights[i]).epsilon(1e-9));
}

TEST_CASE("basepoint round trip is exact") {
  const auto g = groups::schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  const auto mu = ps::ps_measure(groups::enumerate_ball(g, 5, x0), x0, 0.5, 0.43);
  const auto xp = hyp::InteriorPoint::from_ball((hyp::Vec(3) << -0.4, 0.1, 0.2).finished());
  const auto back = ps::translate_basepoint(ps::translate_basepoint(mu, xp), x0);
  for (std::size_t i = 0; i < mu.size(); ++i) CHECK(back.weights[i] == doctest::Approx(mu.weights[i]).epsilon(1e-12));
}

TEST_CASE("transport defect vanishes for arc length") {
  const auto mu = lebesgue(40000);
  std::vector<hyp::Vec> centers;
  for (double t : {0.3, 2.0, 4.1}) centers.push_back((hyp::Vec(2) << std::cos(t), std::sin(t)).finished());
  const auto tests = ps::lipschitz_bumps(centers, 0.7);
  const auto g = hyp::Isometry::boost(1, 0, 0.9) * hyp::Isometry::rotation(1, 0, 1, 0.4);
  CHECK(ps::transport_defect(mu, g, tests) < 1e-4);
  // The wrong dimension does not transport.
  auto wrong = mu;
  wrong.delta_hat = 0.5;
  CHECK(ps::transport_defect(wrong, g, tests) > 1e-2);
}

TEST_CASE("Lipschitz bumps") {
  const auto f = ps::lipschitz_bumps({(hyp::Vec(2) << 1.0, 0.0).finished()}, 0.5);
  CHECK(f[0]((hyp::Vec(2) << 1.0, 0.0).finished()) == doctest::Approx(1.0));
  CHECK(f[0]((hyp::Vec(2) << 0.0, 1.0).finished()) == doctest::Approx(0.0));
  CHECK_THROWS(ps::lipschitz_bumps({}, 0.0));
}

TEST_CASE("mass profile is normalized at the reference point") {
  const auto g = groups::schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  const auto ball = groups::enumerate_ball(g, 6, x0);
  const auto prof = ps::mass_profile(ball, 0.5, 0.43, {x0}, std::nullopt);
  REQUIRE(prof.size() == 1);
  CHECK(prof[0].mass == doctest::Approx(1.0));
  CHECK_FALSE(prof[0].laplacian_defect.has_value());
}
