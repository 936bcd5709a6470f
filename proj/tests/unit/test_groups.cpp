#include <doctest.h>

#include <cmath>
#include <numbers>

#include "limitlab/groups.hpp"

using namespace limitlab;
using namespace limitlab::groups;

TEST_CASE("free rank-two word counts") {
  const auto g = schottky_demo();
  const auto ball = enumerate_ball(g, 6, hyp::InteriorPoint::origin(2));
  std::vector<int> counts(7, 0);
  for (std::size_t i = 0; i < ball.size(); ++i) counts[static_cast<std::size_t>(ball.length(i))]++;
  CHECK(counts == std::vector<int>{1, 4, 12, 36, 108, 324, 972});
  CHECK(ball.duplicates_removed() == 0);
  REQUIRE(ball.index_of("abA").has_value());
  CHECK(ball.word(*ball.index_of("abA")) == "abA");
}

TEST_CASE("orbit points match group elements and right action order") {
  const auto g = schottky_demo();
  const auto x0 = hyp::InteriorPoint::origin(2);
  const auto ball = enumerate_ball(g, 3, x0);
  for (std::size_t i = 0; i < ball.size(); ++i) {
    const auto y = g.element(ball.word(i)).act(x0);
    CHECK(hyp::distance(y, ball.orbit_point(i)) < 1e-9);
    CHECK(ball.displacement(i) == doctest::Approx(hyp::distance(x0, y)).epsilon(1e-10));
  }
  // Right action: x.(ab) = (x.a).b.
  const auto xab = g.element("ab").act(x0);
  const auto step = g.element("b").act(g.element("a").act(x0));
  CHECK(hyp::distance(xab, step) < 1e-9);
}

TEST_CASE("Schottky generators map the source circle onto the target circle") {
  const auto g = schottky_demo();
  REQUIRE(g.has_mobius());
  for (int i = 0; i < g.rank(); ++i) {
    const auto& p = g.pairings()[static_cast<std::size_t>(i)];
    const auto& m = g.letter_mobius(letter_for(i, false));
    for (int k = 0; k < 12; ++k) {
      const Complex z = p.from.center + p.from.radius * std::polar(1.0, 2.0 * std::numbers::pi * k / 12.0);
      CHECK(std::abs(std::abs(*m.apply(z) - p.to.center) - p.to.radius) < 1e-12);
    }
    // The exterior goes inside.
    CHECK(std::abs(*m.apply(Complex(10.0, 7.0)) - p.to.center) < p.to.radius);
  }
}

TEST_CASE("Fuchsian groups preserve the unit circle") {
  for (const auto& g : {fuchsian_schottky(1.2), punctured_torus_group({3.0, 0.0}, {3.0, 0.0}, 1)}) {
    CHECK(g.n() == 1);
    CHECK_FALSE(g.heuristic());
  }
  const auto t = punctured_torus_group({3.0, 0.0}, {3.0, 0.0}, 2);
  for (int i = 0; i < t.rank(); ++i) {
    const auto& m = t.letter_mobius(letter_for(i, false));
    CHECK(std::abs(m.trace() - Complex(3.0, 0.0)) < 1e-12);
    for (double th : {0.1, 1.0, 2.5, 4.0}) CHECK(std::abs(std::abs(*m.apply(std::polar(1.0, th))) - 1.0) < 1e-12);
  }
  // The commutator of a punctured-torus pair is parabolic with trace -2.
  const auto c = t.mobius_element("abAB");
  CHECK(std::abs(c.trace() - Complex(-2.0, 0.0)) < 1e-9);
  CHECK(punctured_torus_group({3.0, 0.1}, {3.0, 0.0}, 2).heuristic());
}

TEST_CASE("cyclic group critical exponent is zero") {
  const auto est = estimate_delta(cyclic_group(1, 2.0), 100, hyp::InteriorPoint::origin(1));
  CHECK(est.value < 0.05);
}

TEST_CASE("orbit counting for the Fuchsian Schottky group") {
  // The exponent lies strictly between 0 and 1, and the fit counts are monotone.
  const auto est = estimate_delta(fuchsian_schottky(1.2), 10, hyp::InteriorPoint::origin(1));
  CHECK(est.value > 0.3);
  CHECK(est.value < 0.9);
  for (std::size_t i = 1; i < est.counts.size(); ++i) CHECK(est.counts[i] >= est.counts[i - 1]);
}

TEST_CASE("box dimension of evenly spaced circle points is one") {
  BoundaryCloud cloud;
  cloud.n = 1;
  for (int k = 0; k < 200000; ++k) {
    const double t = 2.0 * std::numbers::pi * k / 200000.0;
    cloud.points.push_back((hyp::Vec(2) << std::cos(t), std::sin(t)).finished());
    cloud.words.emplace_back();
  }
  const auto box = box_dimension(cloud, geometric_scales(0.1, 1e-3, 8));
  CHECK(box.value == doctest::Approx(1.0).epsilon(0.03));
}

TEST_CASE("geometric scales") {
  const auto s = geometric_scales(0.1, 0.001, 3);
  REQUIRE(s.size() == 3);
  CHECK(s[1] == doctest::Approx(0.01));
}

TEST_CASE("limit set points are attracted toward fixed points") {
  const auto g = schottky_demo();
  const auto cloud = limit_set_sample(g, 7, hyp::InteriorPoint::origin(2));
  CHECK(cloud.points.size() == 4u * 729u);
  // aaaaaaa sits near the attracting fixed point of a.
  const auto fp = attracting_fixed_point(g.element("a"));
  for (std::size_t i = 0; i < cloud.points.size(); ++i)
    if (cloud.words[i] == "aaaaaaa") CHECK((cloud.points[i] - fp.direction()).norm() < 1e-3);
}

TEST_CASE("boundary conjugacy is the identity for identical groups") {
  const auto f = punctured_torus_group({3.0, 0.0}, {3.0, 0.0}, 1);
  const auto phi = boundary_conjugacy(f, f, 6);
  REQUIRE(phi.samples().size() > 100);
  for (double th : {0.2, 1.7, 3.3, 5.9}) {
    const hyp::Vec v = phi(th);
    CHECK(std::abs(std::atan2(v(1), v(0)) - std::remainder(th, 2.0 * std::numbers::pi)) < phi.max_gap());
  }
  for (const auto& s : phi.samples()) CHECK((s.target - s.source).norm() < 1e-8);
}

TEST_CASE("shortest displacement") {
  CHECK(shortest_displacement(cyclic_group(2, 1.5), 3, hyp::InteriorPoint::origin(2)) == doctest::Approx(1.5));
}
