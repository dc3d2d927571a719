#include <doctest.h>

#include <cmath>

#include "icv/error.hpp"
#include "icv/selkernel.hpp"
#include "oracles.hpp"

using namespace icv;
using icv::testing::integrate_line;

namespace {

bool close_rel(double a, double b, double rel, double abs_floor = 1e-14) {
  return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)) + abs_floor;
}

const std::pair<double, double> kParams[] = {{0.0, 1.0}, {2.0, 0.5}, {2.4233, 3.0},
                                             {6.0, 6.0}, {25.2, 1.39}, {0.7, 0.9}};

}  // namespace

TEST_SUITE("selkernel") {

TEST_CASE("moments and roughness match quadrature") {
  for (auto [alpha, sigma] : kParams) {
    CAPTURE(alpha);
    CAPTURE(sigma);
    const SelectionKernel k(alpha, sigma);
    const auto& m = k.moments();
    CHECK(integrate_line([&](double u) { return k(u); }) == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(close_rel(m.mu2, integrate_line([&](double u) { return u * u * k(u); }), 1e-6, 1e-9));
    CHECK(close_rel(m.mu4, integrate_line([&](double u) { return std::pow(u, 4) * k(u); }), 1e-6, 1e-8));
    CHECK(close_rel(m.r_l, integrate_line([&](double u) { return k(u) * k(u); }), 1e-6));
  }
}

TEST_CASE("self-convolution matches quadrature") {
  const SelectionKernel k(6.0, 6.0);
  const auto conv = k.self_convolution();
  CHECK(total_mass(conv) == doctest::Approx(1.0));
  for (double u : {0.0, 0.8, 3.5, 11.0}) {
    const double quad = integrate_line([&](double t) { return k(t) * k(u - t); }, 0.0, 1e-12);
    CHECK(close_rel(evaluate(conv, u), quad, 1e-6, 1e-12));
  }
}

TEST_CASE("R(rho) from the variance kernel matches nested quadrature") {
  for (auto [alpha, sigma] : {std::pair{0.0, 1.0}, std::pair{2.0, 0.5}, std::pair{25.2, 1.39}}) {
    CAPTURE(alpha);
    const SelectionKernel k(alpha, sigma);
    auto dk = [&](double u) {
      return (1.0 + alpha) * normal_pdf_deriv(1, u, 1.0) - alpha * normal_pdf_deriv(1, u, sigma);
    };
    // γ'(u) = (L * L')(u) − 2L'(u);  ρ(u) = u·γ'(u)
    auto rho = [&](double u) {
      const double conv = integrate_line([&](double t) { return k(t) * dk(u - t); }, 0.0, 1e-12);
      return u * (conv - 2.0 * dk(u));
    };
    const double quad = integrate_line([&](double u) { const double r = rho(u); return r * r; }, 0.0, 1e-10);
    CHECK(close_rel(k.moments().r_rho, quad, 1e-6));
    for (double u : {0.3, 1.7}) CHECK(close_rel(evaluate(k.variance_kernel(), u), rho(u), 1e-6, 1e-12));
  }
}

TEST_CASE("rescale constant is the ratio of AMISE bandwidths") {
  CHECK(SelectionKernel::gaussian().rescale_constant() == doctest::Approx(1.0).epsilon(1e-14));
  for (auto [alpha, sigma] : kParams) {
    const SelectionKernel k(alpha, sigma);
    const auto& m = k.moments();
    const double h_phi = std::pow((0.5 / kSqrtPi) / 1.0, 0.2);
    const double h_l = std::pow(m.r_l / (m.mu2 * m.mu2), 0.2);
    CHECK(k.rescale_constant() == doctest::Approx(h_phi / h_l).epsilon(1e-12));
  }
}

TEST_CASE("degenerate and invalid kernels") {
  const SelectionKernel k(1.0, std::sqrt(2.0));
  CHECK(k.degenerate());
  try {
    (void)k.rescale_constant();
    FAIL("expected degenerate_kernel");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::degenerate_kernel);
  }
  CHECK_THROWS_AS(SelectionKernel(-0.1, 1.0), Error);
  CHECK_THROWS_AS(SelectionKernel(1.0, 0.0), Error);
  CHECK_THROWS_AS(SelectionKernel(1.0, NAN), Error);
}

TEST_CASE("family classification") {
  CHECK(SelectionKernel(0.0, 3.0).family() == KernelFamily::Density);
  CHECK(SelectionKernel(2.0, 0.5).family() == KernelFamily::CutOutMiddle);
  CHECK(SelectionKernel(2.0, 0.5)(0.0) < 0.0);
  CHECK(SelectionKernel(2.0, 0.8).family() == KernelFamily::Density);
  CHECK(SelectionKernel(25.2, 1.39).family() == KernelFamily::NegativeTailed);
  CHECK(SelectionKernel(25.2, 1.39)(4.0) < 0.0);
}

}
