#include <doctest.h>

#include <cmath>
#include <random>

#include "icv/error.hpp"
#include "icv/pairsum.hpp"

using namespace icv;

namespace {

std::vector<double> uniform_sample(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

}  // namespace

TEST_SUITE("pairsum") {

TEST_CASE("Sample sorts, summarises and counts ties") {
  const Sample s({3.0, -1.0, 2.0, 2.0, 3.0, 3.0});
  CHECK(s.values()[0] == -1.0);
  CHECK(s.values()[5] == 3.0);
  CHECK(s.tie_count() == 3);
  CHECK(s.range() == 4.0);
  double mean = 12.0 / 6.0;
  double ss = 0.0;
  for (double x : {3.0, -1.0, 2.0, 2.0, 3.0, 3.0}) ss += (x - mean) * (x - mean);
  CHECK(s.sd() == doctest::Approx(std::sqrt(ss / 5.0)));
  CHECK(Sample({4.0}).sd() == 0.0);
}

TEST_CASE("pair sums equal naive loops") {
  for (std::size_t n : {2, 3, 17, 64, 333}) {
    const auto v = uniform_sample(n, n);
    for (double scale : {0.01, 1.0, 50.0, 1e6}) {
      double e = 0.0;
      double e2 = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
          const double t = std::exp(-scale * (v[i] - v[j]) * (v[i] - v[j]));
          e += t;
          e2 += t * t;
        }
      }
      CAPTURE(n);
      CAPTURE(scale);
      CHECK(pair_exp_sum(v, scale) == doctest::Approx(e).epsilon(1e-12));
      const auto both = pair_exp_sums(v, scale);
      CHECK(both.e == doctest::Approx(e).epsilon(1e-12));
      CHECK(both.e2 == doctest::Approx(e2).epsilon(1e-12));
    }
  }
}

TEST_CASE("cross sum equals a naive loop") {
  const auto v = uniform_sample(101, 5);
  const std::vector<double> centres{-1.0, 0.5};
  const std::vector<double> weights{0.3, 2.0};
  const std::vector<double> scales{0.5, 4.0};
  double naive = 0.0;
  for (double x : v) {
    for (std::size_t k = 0; k < 2; ++k)
      naive += weights[k] * std::exp(-scales[k] * (x - centres[k]) * (x - centres[k]));
  }
  CHECK(cross_exp_sum(v, centres, weights, scales) == doctest::Approx(naive).epsilon(1e-12));
}

TEST_CASE("local pair sums equal naive loops") {
  const auto v = uniform_sample(90, 8);
  LocalCoefficients c{};
  c.sigma2 = 2.25;
  c.w11 = 1.3;  c.d11 = 0.7;  c.t11 = 0.2;
  c.w22 = 0.4;  c.d22 = 0.1;  c.t22 = 0.15;
  c.w12 = -0.9; c.d12 = 0.3;  c.t12 = 0.25;
  c.l1 = 2.0;   c.dl1 = 0.9;
  c.l2 = -0.5;  c.dl2 = 0.2;
  const double x = 0.4;
  std::vector<double> p(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) p[i] = std::exp(-0.5 * (x - v[i]) * (x - v[i]));

  for (bool two : {false, true}) {
    c.two_component = two;
    double first = 0.0;
    double loo = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      for (std::size_t j = i + 1; j < v.size(); ++j) {
        const double d2 = (v[i] - v[j]) * (v[i] - v[j]);
        const double dm = x - 0.5 * (v[i] + v[j]);
        const double da = x - (c.sigma2 * v[i] + v[j]) / (1.0 + c.sigma2);
        const double db = x - (v[i] + c.sigma2 * v[j]) / (1.0 + c.sigma2);
        first += c.w11 * std::exp(-c.d11 * d2 - c.t11 * dm * dm);
        double l = c.l1 * std::exp(-c.dl1 * d2);
        if (two) {
          first += c.w22 * std::exp(-c.d22 * d2 - c.t22 * dm * dm) +
                   c.w12 * std::exp(-c.d12 * d2) *
                       (std::exp(-c.t12 * da * da) + std::exp(-c.t12 * db * db));
          l += c.l2 * std::exp(-c.dl2 * d2);
        }
        loo += l * (p[i] + p[j]);
      }
    }
    const auto s = local_pair_sums(v, c, x, p);
    CAPTURE(two);
    CHECK(s.first == doctest::Approx(first).epsilon(1e-12));
    CHECK(s.loo == doctest::Approx(loo).epsilon(1e-12));
  }
}

}
