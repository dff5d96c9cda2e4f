#include "cfma/summation.hpp"

namespace cfma {

namespace {
constexpr std::size_t kBlock = 64;
}

double pairwise_sum(std::span<const double> values) noexcept {
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace cfma
