#include <algorithm>
#include <cmath>

#include "icv/error.hpp"
#include "icv/pairsum.hpp"

namespace icv {

Sample::Sample(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) fail(Errc::insufficient_data, "sample is empty");
  for (double x : values_) {
    if (!std::isfinite(x)) fail(Errc::invalid_argument, "sample contains a non-finite value");
  }
  std::sort(values_.begin(), values_.end());
  for (std::size_t i = 1; i < values_.size(); ++i) {
    if (values_[i] == values_[i - 1]) ++ties_;
  }
  const double n = static_cast<double>(values_.size());
  if (values_.size() > 1) {
    double mean = 0.0;
    for (double x : values_) mean += x;
    mean /= n;
    double ss = 0.0;
    for (double x : values_) ss += (x - mean) * (x - mean);
    sd_ = std::sqrt(ss / (n - 1.0));
  }
}

}  // namespace icv
