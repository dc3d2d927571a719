#include <doctest.h>

#include <cmath>

#include "icv/gauss_terms.hpp"
#include "oracles.hpp"

using namespace icv;
using icv::testing::integrate_line;

namespace {

bool close_rel(double a, double b, double rel, double abs_floor = 1e-14) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

}  // namespace

TEST_SUITE("gauss_terms") {

TEST_CASE("Hermite polynomials match their explicit forms") {
  for (double x : {-2.5, -0.3, 0.0, 0.7, 3.1}) {
    CHECK(hermite_he(0, x) == doctest::Approx(1.0));
    CHECK(hermite_he(1, x) == doctest::Approx(x));
    CHECK(hermite_he(2, x) == doctest::Approx(x * x - 1.0));
    CHECK(hermite_he(3, x) == doctest::Approx(x * x * x - 3.0 * x));
    CHECK(hermite_he(4, x) == doctest::Approx(std::pow(x, 4) - 6.0 * x * x + 3.0));
    CHECK(hermite_he(6, x) ==
          doctest::Approx(std::pow(x, 6) - 15.0 * std::pow(x, 4) + 45.0 * x * x - 15.0));
  }
}

TEST_CASE("density derivatives agree with finite differences") {
  const double eps = 1e-4;
  for (double sd : {0.4, 1.0, 2.3}) {
    for (int m = 1; m <= 4; ++m) {
      for (double x : {-1.7, -0.2, 0.5, 2.0}) {
        const double fd =
            (normal_pdf_deriv(m - 1, x + eps, sd) - normal_pdf_deriv(m - 1, x - eps, sd)) /
            (2.0 * eps);
        CHECK(close_rel(normal_pdf_deriv(m, x, sd), fd, 1e-6, 1e-9 / std::pow(sd, m + 1)));
      }
    }
  }
  CHECK(normal_pdf_deriv(0, 0.3, 1.7) == doctest::Approx(normal_pdf(0.3, 1.7)));
}

TEST_CASE("product integral matches quadrature") {
  struct Case {
    double a, b, delta;
    int p, q;
  };
  const Case cases[] = {{1.0, 1.0, 0.0, 0, 0},  {0.5, 1.3, 0.7, 0, 0},  {1.0, 2.0, -1.2, 1, 0},
                        {0.8, 0.6, 0.3, 2, 2},  {1.5, 0.4, 2.0, 3, 1},  {0.3, 0.3, -0.4, 3, 3},
                        {2.0, 1.0, 1.0, 0, 4},  {1.0, 1.0, 0.5, 2, 0}};
  for (const auto& c : cases) {
    const double closed = gauss_product_integral(c.a, c.b, c.delta, c.p, c.q);
    const double quad = integrate_line(
        [&](double x) { return normal_pdf_deriv(c.p, x - c.delta, c.a) * normal_pdf_deriv(c.q, x, c.b); },
        0.0, 1e-12);
    CAPTURE(c.a);
    CAPTURE(c.p);
    CAPTURE(c.q);
    CHECK(close_rel(closed, quad, 1e-6, 1e-11));
  }
}

TEST_CASE("term lists: evaluation, roughness and mass") {
  const std::vector<GaussTerm> f{{0.3, -1.0, 0.5, 0}, {0.7, 0.8, 1.2, 0}};
  CHECK(total_mass(f) == doctest::Approx(1.0));
  CHECK(evaluate(f, 0.2) ==
        doctest::Approx(0.3 * normal_pdf(1.2, 0.5) + 0.7 * normal_pdf(-0.6, 1.2)));
  const double quad = integrate_line([&](double x) { const double v = evaluate(f, x); return v * v; });
  CHECK(close_rel(roughness(f), quad, 1e-6));

  const std::vector<GaussTerm> phi{{1.0, 0.0, 1.0, 0}};
  CHECK(roughness(phi) == doctest::Approx(0.5 / kSqrtPi).epsilon(1e-14));

  const std::vector<GaussTerm> g{{1.0, 0.4, 0.9, 2}, {-0.5, -0.2, 0.3, 1}};
  CHECK(inner_product(f, g) == doctest::Approx(inner_product(g, f)).epsilon(1e-13));
  const double quad_fg = integrate_line([&](double x) { return evaluate(f, x) * evaluate(g, x); });
  CHECK(close_rel(inner_product(f, g), quad_fg, 1e-6, 1e-11));
  CHECK(total_mass(g) == 0.0);
}

}
