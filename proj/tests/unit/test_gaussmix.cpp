#include <doctest.h>

#include <cmath>
#include <string>

#include "icv/crossval.hpp"
#include "icv/error.hpp"
#include "icv/gaussmix.hpp"
#include "oracles.hpp"

using namespace icv;
using icv::testing::integrate;
using icv::testing::integrate_line;

namespace {

bool close_rel(double a, double b, double rel, double abs_floor = 1e-14) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

double convolve_at(const NormalMixture& f, double x, double h, double power) {
  // ∫ φ_h(x − y)^power f(y) dy
  return integrate([&](double y) { return std::pow(normal_pdf(x - y, h), power) * f.pdf(y); },
                   x - 14.0 * h, x + 14.0 * h, 1e-12);
}

}  // namespace

TEST_SUITE("gaussmix") {

TEST_CASE("mixture invariants are enforced") {
  CHECK_THROWS_AS(NormalMixture({}), Error);
  CHECK_THROWS_AS(NormalMixture({{0.5, 0.0, 1.0}, {0.4, 1.0, 1.0}}), Error);
  CHECK_THROWS_AS(NormalMixture({{1.2, 0.0, 1.0}, {-0.2, 1.0, 1.0}}), Error);
  CHECK_THROWS_AS(NormalMixture({{1.0, 0.0, 0.0}}), Error);
  try {
    NormalMixture({{1.0, 0.0, -1.0}});
  } catch (const Error& e) {
    CHECK(e.code() == Errc::invalid_argument);
  }
}

TEST_CASE("every target density has unit mass and exact roughness") {
  for (auto name : target_names()) {
    CAPTURE(std::string(name));
    const auto f = target_density(name);
    CHECK(integrate_line([&](double x) { return f.pdf(x); }) == doctest::Approx(1.0).epsilon(1e-9));
    for (int r : {0, 2, 3}) {
      const auto terms = f.terms(r);
      const double quad = integrate_line([&](double x) {
        const double v = evaluate(terms, x);
        return v * v;
      });
      CHECK(close_rel(roughness_deriv(f, r), quad, 1e-6));
    }
  }
  CHECK_THROWS_WITH_AS(target_density("trimodal"), doctest::Contains("skewed-bimodal"), Error);
}

TEST_CASE("sampling is reproducible and has the right moments") {
  const auto f = target_density("skewed-bimodal");
  CHECK(f.sample(50, 7) == f.sample(50, 7));
  CHECK(f.sample(50, 7) != f.sample(50, 8));
  const auto x = f.sample(200000, 11);
  double mean = 0.0;
  for (double v : x) mean += v;
  mean /= static_cast<double>(x.size());
  CHECK(mean == doctest::Approx(0.25 * 1.5).epsilon(0.02));
}

TEST_CASE("convolution and scaling") {
  const auto f = target_density("bimodal");
  const auto g = f.convolved(0.4);
  for (double x : {-2.0, -0.5, 0.0, 1.3}) CHECK(close_rel(g.pdf(x), convolve_at(f, x, 0.4, 1.0), 1e-8));
  const auto s = f.scaled(3.0);
  CHECK(s.pdf(1.5) == doctest::Approx(f.pdf(0.5) / 3.0));
}

TEST_CASE("L2 distance matches quadrature and vanishes on identical mixtures") {
  const auto a = target_density("skewed-unimodal");
  const auto b = target_density("gaussian");
  const double quad = integrate_line([&](double x) {
    const double d = a.pdf(x) - b.pdf(x);
    return d * d;
  });
  CHECK(close_rel(l2_distance_sq(a, b), quad, 1e-6));
  CHECK(l2_distance_sq(a, a) == doctest::Approx(0.0));
}

TEST_CASE("KDE mixture equals the direct estimate") {
  const std::vector<double> data{-1.0, 0.2, 0.25, 1.7};
  const auto m = kde_mixture(data, 0.3);
  const std::vector<double> grid{-1.5, 0.0, 0.22, 2.0};
  const auto direct = density_estimate(data, 0.3, grid);
  for (std::size_t k = 0; k < grid.size(); ++k) CHECK(m.pdf(grid[k]) == doctest::Approx(direct[k]));
}

TEST_CASE("exact MISE matches the variance + bias² decomposition by quadrature") {
  const auto f = target_density("bimodal");
  const std::size_t n = 50;
  for (double h : {0.15, 0.4}) {
    // MISE = (1/n)∫(φ_h² * f) − (1/n)∫(φ_h * f)² + ∫(φ_h * f − f)²
    const double var1 = integrate([&](double x) { return convolve_at(f, x, h, 2.0); }, -8.0, 8.0, 1e-10);
    const double rest = integrate(
        [&](double x) {
          const double m = convolve_at(f, x, h, 1.0);
          return -m * m / static_cast<double>(n) + (m - f.pdf(x)) * (m - f.pdf(x));
        },
        -8.0, 8.0, 1e-11);
    const double oracle = var1 / static_cast<double>(n) + rest;
    CAPTURE(h);
    CHECK(close_rel(exact_mise(f, n, h), oracle, 1e-6));
  }
}

TEST_CASE("MISE minimiser and AMISE bandwidth for the normal") {
  const auto f = NormalMixture::standard_normal();
  CHECK(mise_minimizer(f, 500) == doctest::Approx(0.315).epsilon(0.005 / 0.315));
  CHECK(amise_bandwidth(kGaussianKernelStats, f, 400) ==
        doctest::Approx(std::pow(4.0 / (3.0 * 400.0), 0.2)).epsilon(1e-12));
  const double h = mise_minimizer(f, 500);
  CHECK(exact_mise(f, 500, h) <= exact_mise(f, 500, 0.99 * h));
  CHECK(exact_mise(f, 500, h) <= exact_mise(f, 500, 1.01 * h));
}

}
