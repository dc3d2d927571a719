#include "icv/gaussmix.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <random>
#include <string>

#include "icv/error.hpp"
#include "icv/minimize.hpp"

namespace icv {

NormalMixture::NormalMixture(std::vector<NormalComponent> components)
    : components_(std::move(components)) {
  if (components_.empty()) fail(Errc::invalid_argument, "mixture needs at least one component");
  double total = 0.0;
  for (const auto& c : components_) {
    if (!(c.weight > 0.0) || !std::isfinite(c.weight))
      fail(Errc::invalid_argument, "mixture weights must be strictly positive");
    if (!(c.sd > 0.0) || !std::isfinite(c.sd))
      fail(Errc::invalid_argument, "mixture standard deviations must be positive");
    if (!std::isfinite(c.mean)) fail(Errc::invalid_argument, "mixture means must be finite");
    total += c.weight;
  }
  if (std::abs(total - 1.0) > 1e-12) fail(Errc::invalid_argument, "mixture weights must sum to 1");
}

double NormalMixture::pdf(double x) const {
  double acc = 0.0;
  for (const auto& c : components_) acc += c.weight * normal_pdf(x - c.mean, c.sd);
  return acc;
}

std::vector<double> NormalMixture::sample(std::size_t n, std::uint64_t seed) const {
  if (n == 0) fail(Errc::invalid_argument, "sample size must be at least 1");
  std::vector<double> cumulative(components_.size());
  double run = 0.0;
  for (std::size_t k = 0; k < components_.size(); ++k) {
    run += components_[k].weight;
    cumulative[k] = run;
  }

  std::mt19937_64 engine(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<double> out(n);
  for (auto& x : out) {
    const double u = uniform(engine);
    auto it = std::upper_bound(cumulative.begin(), cumulative.end() - 1, u);
    const auto& c = components_[static_cast<std::size_t>(it - cumulative.begin())];
    x = c.mean + c.sd * normal(engine);
  }
  return out;
}

NormalMixture NormalMixture::convolved(double h) const {
  std::vector<NormalComponent> out(components_);
  for (auto& c : out) c.sd = std::hypot(c.sd, h);
  return NormalMixture(std::move(out));
}

NormalMixture NormalMixture::scaled(double c) const {
  if (!(c > 0.0)) fail(Errc::invalid_argument, "scale factor must be positive");
  std::vector<NormalComponent> out(components_);
  for (auto& comp : out) {
    comp.mean *= c;
    comp.sd *= c;
  }
  return NormalMixture(std::move(out));
}

std::vector<GaussTerm> NormalMixture::terms(int order) const {
  std::vector<GaussTerm> out;
  out.reserve(components_.size());
  for (const auto& c : components_) out.push_back({c.weight, c.mean, c.sd, order});
  return out;
}

std::pair<double, double> NormalMixture::support(double k) const {
  double lo = components_.front().mean;
  double hi = lo;
  double sd_max = 0.0;
  for (const auto& c : components_) {
    lo = std::min(lo, c.mean);
    hi = std::max(hi, c.mean);
    sd_max = std::max(sd_max, c.sd);
  }
  return {lo - k * sd_max, hi + k * sd_max};
}

double roughness_deriv(const NormalMixture& f, int r) {
  if (r != 0 && r != 2 && r != 3)
    fail(Errc::invalid_argument, "roughness order must be 0, 2 or 3, got " + std::to_string(r));
  return roughness(f.terms(r));
}

RoughnessSet roughness_set(const NormalMixture& f) {
  return {roughness_deriv(f, 0), roughness_deriv(f, 2), roughness_deriv(f, 3)};
}

double l2_distance_sq(const NormalMixture& a, const NormalMixture& b) {
  const auto ta = a.terms();
  const auto tb = b.terms();
  const double d = roughness(ta) - 2.0 * inner_product(ta, tb) + roughness(tb);
  return std::max(d, 0.0);
}

NormalMixture kde_mixture(std::span<const double> data, double h) {
  if (data.empty()) fail(Errc::insufficient_data, "estimate needs at least one observation");
  if (!(h > 0.0)) fail(Errc::invalid_argument, "bandwidth must be positive");
  std::vector<NormalComponent> comps;
  comps.reserve(data.size());
  const double w = 1.0 / static_cast<double>(data.size());
  for (double x : data) comps.push_back({w, x, h});
  // Equal weights summing to 1 up to rounding; renormalise the last one so the
  // invariant check is exact for any n.
  double rest = 0.0;
  for (std::size_t i = 0; i + 1 < comps.size(); ++i) rest += comps[i].weight;
  comps.back().weight = 1.0 - rest;
  return NormalMixture(std::move(comps));
}

double exact_mise(const NormalMixture& f, std::size_t n, double h) {
  if (!(h > 0.0)) fail(Errc::invalid_argument, "bandwidth must be positive");
  if (n == 0) fail(Errc::invalid_argument, "sample size must be at least 1");
  const auto tf = f.terms();
  const auto tfh = f.convolved(h).terms();
  const double nn = static_cast<double>(n);
  return 1.0 / (2.0 * kSqrtPi * nn * h) + (1.0 - 1.0 / nn) * roughness(tfh) -
         2.0 * inner_product(tfh, tf) + roughness(tf);
}

double mise_minimizer(const NormalMixture& f, std::size_t n) {
  const double h_amise = amise_bandwidth(kGaussianKernelStats, f, n);
  const auto curve = minimize_curve([&](double h) { return exact_mise(f, n, h); }, 0.01 * h_amise,
                                    4.0 * h_amise, MinPolicy::Global);
  return curve.minimum.h;
}

double amise_bandwidth(KernelStats kernel, const NormalMixture& f, std::size_t n) {
  if (std::abs(kernel.mu2k) < 1e-10)
    fail(Errc::degenerate_kernel, "kernel second moment vanishes; AMISE bandwidth undefined");
  if (!(kernel.r_k > 0.0)) fail(Errc::invalid_argument, "kernel roughness must be positive");
  if (n == 0) fail(Errc::invalid_argument, "sample size must be at least 1");
  const double r_f2 = roughness_deriv(f, 2);
  return std::pow(kernel.r_k / (kernel.mu2k * kernel.mu2k * r_f2), 0.2) *
         std::pow(static_cast<double>(n), -0.2);
}

namespace {

constexpr std::array<std::string_view, 5> kTargetNames = {
    "gaussian", "skewed-unimodal", "bimodal", "separated-bimodal", "skewed-bimodal"};

}  // namespace

NormalMixture target_density(std::string_view name) {
  if (name == "gaussian") return NormalMixture::standard_normal();
  if (name == "skewed-unimodal")
    return NormalMixture(
        {{0.2, 0.0, 1.0}, {0.2, 0.5, 2.0 / 3.0}, {0.6, 13.0 / 12.0, 5.0 / 9.0}});
  if (name == "bimodal") return NormalMixture({{0.5, -1.0, 2.0 / 3.0}, {0.5, 1.0, 2.0 / 3.0}});
  if (name == "separated-bimodal") return NormalMixture({{0.5, -1.5, 0.5}, {0.5, 1.5, 0.5}});
  if (name == "skewed-bimodal") return NormalMixture({{0.75, 0.0, 1.0}, {0.25, 1.5, 1.0 / 3.0}});

  std::string known;
  for (auto n : kTargetNames) {
    if (!known.empty()) known += ", ";
    known += n;
  }
  fail(Errc::invalid_argument, "unknown density '" + std::string(name) + "' (known: " + known + ")");
}

std::span<const std::string_view> target_names() { return kTargetNames; }

}  // namespace icv
