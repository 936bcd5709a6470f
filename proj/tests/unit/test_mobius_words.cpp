#include <doctest.h>

#include <cmath>
#include <complex>

#include "limitlab/hyperbolic.hpp"
#include "limitlab/mobius.hpp"
#include "limitlab/words.hpp"

using namespace limitlab;
using mobius::Complex;
using mobius::Mobius;

namespace {

Mobius make(Complex a, Complex b, Complex c, Complex d) {
  mobius::Mat2 m;
  m << a, b, c, d;
  return Mobius(m);
}

}  // namespace

TEST_CASE("word algebra") {
  CHECK(word_inverse("abB") == "bBA");
  CHECK(word_reduce("abBa") == "aa");
  CHECK(word_reduce("aA") == "");
  CHECK(word_multiply("ab", "BA") == "");
  CHECK(word_multiply("ab", "a") == "aba");
  CHECK(word_is_reduced("abAB"));
  CHECK_FALSE(word_is_reduced("abBa"));
  CHECK(word_is_valid("abAB", 2));
  CHECK_FALSE(word_is_valid("abc", 2));
  CHECK(letter_inverse('a') == 'A');
  CHECK(letter_from_rank(letter_rank('B')) == 'B');
}

TEST_CASE("Mobius action on points and infinity") {
  const Mobius g = make(2.0, 1.0, 1.0, 1.0);
  CHECK(std::abs(*g.apply(Complex(1.0, 0.0)) - Complex(1.5, 0.0)) < 1e-15);
  CHECK(std::abs(*g.apply(std::nullopt) - Complex(2.0, 0.0)) < 1e-15);
  CHECK_FALSE(g.apply(Complex(-1.0, 0.0)).has_value());
}

TEST_CASE("loxodromic fixed point attracts") {
  const Mobius g = make(2.0, 1.0, 1.0, 1.0);
  REQUIRE(g.is_loxodromic());
  const auto fp = g.attracting_fixed_point();
  REQUIRE(fp.has_value());
  std::optional<Complex> z = Complex(0.3, 0.2);
  for (int i = 0; i < 60; ++i) z = g.apply(z);
  CHECK(std::abs(*z - *fp) < 1e-10);
  CHECK(std::abs(*fp - (1.0 + std::sqrt(5.0)) / 2.0) < 1e-12);
}

TEST_CASE("stereographic projection round trip") {
  for (Complex z : {Complex(0.0, 0.0), Complex(1.0, 0.0), Complex(0.3, -2.0), Complex(-5.0, 4.0)}) {
    const hyp::Vec xi = mobius::stereographic(z);
    CHECK(xi.norm() == doctest::Approx(1.0));
    CHECK(std::abs(*mobius::inverse_stereographic(xi) - z) < 1e-12);
  }
  // The unit circle is the equator.
  CHECK(std::abs(mobius::stereographic(Complex(0.0, 1.0))(2)) < 1e-15);
  CHECK_FALSE(mobius::inverse_stereographic(mobius::stereographic(std::nullopt)).has_value());
}

TEST_CASE("Lorentz image is a homomorphism compatible with the boundary action") {
  const Mobius g = make(Complex(1.0, 0.5), 2.0, Complex(0.0, 1.0), Complex(1.0, -1.0));
  const Mobius h = make(3.0, Complex(0.0, -1.0), 1.0, Complex(0.5, 0.2));
  const hyp::Mat G = mobius::to_lorentz3(g), H = mobius::to_lorentz3(h);
  CHECK((mobius::to_lorentz3(g * h) - G * H).cwiseAbs().maxCoeff() < 1e-9 * G.cwiseAbs().maxCoeff() * H.cwiseAbs().maxCoeff());
  for (Complex z : {Complex(0.2, 0.1), Complex(-1.0, 3.0)}) {
    const hyp::BoundaryPoint xi(mobius::stereographic(z));
    const auto image = hyp::Isometry(G).act(xi);
    CHECK((image.direction() - mobius::stereographic(g.apply(z))).norm() < 1e-10);
  }
}

TEST_CASE("disk automorphisms give 3x3 Lorentz matrices") {
  // z -> (z - a) / (1 - conj(a) z) preserves the disk.
  const Complex a(0.3, -0.4);
  const Mobius g = make(1.0, -a, -std::conj(a), 1.0);
  const hyp::Mat m = mobius::to_lorentz2(g);
  CHECK(m.rows() == 3);
  const hyp::Vec xi = hyp::Isometry(m).act(hyp::BoundaryPoint((hyp::Vec(2) << 1.0, 0.0).finished())).direction();
  const Complex w = *g.apply(Complex(1.0, 0.0));
  CHECK(std::abs(Complex(xi(0), xi(1)) - w) < 1e-12);
  CHECK_THROWS(mobius::to_lorentz2(make(2.0, 0.0, 0.0, 0.5)));
}

TEST_CASE("Cayley transform maps the upper half plane to the disk") {
  const Mobius c = mobius::cayley();
  CHECK(std::abs(*c.apply(Complex(0.0, 1.0))) < 1e-14);
  CHECK(std::abs(std::abs(*c.apply(Complex(2.7, 0.0))) - 1.0) < 1e-14);
}
