#include <doctest.h>

#include "icv/error.hpp"
#include "icv/spline.hpp"

using namespace icv;

TEST_SUITE("spline") {

TEST_CASE("interpolates its knots and reproduces lines") {
  const NaturalSpline s({0.0, 1.0, 2.5, 4.0}, {1.0, 3.0, 6.0, 9.0});
  CHECK(s(0.0) == doctest::Approx(1.0));
  CHECK(s(2.5) == doctest::Approx(6.0));
  CHECK(s(4.0) == doctest::Approx(9.0));
  CHECK(s(1.7) == doctest::Approx(1.0 + 2.0 * 1.7));
  CHECK(s.derivative(3.0, 1) == doctest::Approx(2.0));
}

TEST_CASE("natural end conditions") {
  const NaturalSpline s({0.0, 1.0, 2.0, 3.0, 4.0}, {0.0, 1.0, 0.0, 1.0, 0.0});
  CHECK(s.derivative(0.0, 2) == doctest::Approx(0.0));
  CHECK(s.derivative(4.0, 2) == doctest::Approx(0.0));
}

TEST_CASE("clamps outside the knots; two knots interpolate linearly") {
  const NaturalSpline s({1.0, 3.0}, {10.0, 20.0});
  CHECK(s(2.0) == doctest::Approx(15.0));
  CHECK(s(-5.0) == 10.0);
  CHECK(s(99.0) == 20.0);
  const NaturalSpline copy = s;
  CHECK(copy(2.5) == doctest::Approx(17.5));
}

TEST_CASE("invalid knots") {
  CHECK_THROWS_AS(NaturalSpline({1.0}, {1.0}), Error);
  CHECK_THROWS_AS(NaturalSpline({1.0, 1.0}, {1.0, 2.0}), Error);
  CHECK_THROWS_AS(NaturalSpline({1.0, 2.0}, {1.0}), Error);
  NaturalSpline empty;
  CHECK(empty.empty());
  CHECK_THROWS_AS(empty(0.0), Error);
}

}
