#pragma once

#include <cstddef>
#include <span>

namespace cfma {

// Pairwise (cascade) summation in index order. The result depends only on
// the values and their order.
double pairwise_sum(std::span<const double> values) noexcept;

}  // namespace cfma
