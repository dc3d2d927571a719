#pragma once

#include <span>

#include "icv/gaussmix.hpp"
#include "icv/selkernel.hpp"

/// Straightforward serial implementations of the O(n²) criteria: ordered
/// double loops that call the kernel and Gaussian helpers directly, with no
/// pair-sum factoring and no vectorisation. They exist to cross-check the
/// fast paths in tests and benchmarks.
namespace icv::reference {

/// (1/(n²h)) Σ_{i,j} (L*L)(d_ij/h) − (2/(n(n−1)h)) Σ_{i≠j} L(d_ij/h)
double lscv(std::span<const double> data, const SelectionKernel& kernel, double h);

/// ∫(f̂_h − f)² through the generic mixture L2 distance.
double ise(std::span<const double> data, const NormalMixture& f, double h);

/// First term of the windowed criterion, ∫ φ_w(x − u) f̂_b(u)² du.
double local_first_term(std::span<const double> data, double x, double b, double w,
                        const SelectionKernel& kernel);

/// The full windowed criterion ICV(x, b, w).
double local_icv(std::span<const double> data, double x, double b, double w,
                 const SelectionKernel& kernel);

}  // namespace icv::reference
