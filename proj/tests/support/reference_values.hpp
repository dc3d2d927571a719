#pragma once

#include <array>
#include <cstddef>

namespace icv::testing {

inline constexpr std::array<std::size_t, 8> kTableSizes{100, 250, 500, 1000, 5000, 20000, 100000, 500000};

// Sample-size model, printed to two decimals.
inline constexpr std::array<double, 8> kModelAlpha{25.20, 12.77, 8.24, 5.71, 3.23, 2.66, 2.66, 2.62};
inline constexpr std::array<double, 8> kModelSigma{1.39, 1.89, 2.37, 2.95, 4.83, 7.21, 11.22, 16.98};

// MSE-optimal (alpha, sigma) per density (column) and n (row), in the order
// gaussian, skewed-unimodal, bimodal, separated-bimodal, skewed-bimodal.
struct AlphaSigma {
  double alpha;
  double sigma;
};
inline constexpr std::array<const char*, 5> kOptimalDensities{
    "gaussian", "skewed-unimodal", "bimodal", "separated-bimodal", "skewed-bimodal"};
inline constexpr AlphaSigma kMseOptimal[8][5] = {
    {{3.05, 2.79}, {5.28, 1.68}, {109.68, 1.03}, {16.70, 1.19}, {343.74, 1.01}},
    {{2.78, 4.04}, {3.16, 2.60}, {48.46, 1.06}, {4.51, 1.84}, {177.15, 1.02}},
    {{2.73, 4.97}, {2.84, 3.56}, {6.21, 1.55}, {3.18, 2.58}, {161.39, 1.02}},
    {{2.69, 5.97}, {2.75, 4.49}, {3.73, 2.12}, {2.84, 3.54}, {123.78, 1.03}},
    {{2.61, 8.84}, {2.66, 6.85}, {2.77, 4.26}, {2.70, 5.74}, {4.71, 1.79}},
    {{2.55, 12.40}, {2.59, 9.58}, {2.68, 6.22}, {2.63, 8.08}, {2.85, 3.46}},
    {{2.50, 18.80}, {2.53, 14.27}, {2.60, 9.19}, {2.56, 11.94}, {2.70, 5.65}},
    {{2.47, 29.54}, {2.49, 21.88}, {2.54, 13.65}, {2.50, 18.07}, {2.62, 8.39}},
};

}  // namespace icv::testing
