#pragma once

#include <vector>

namespace cfma {

// Nodes and weights for integrals against the standard normal density:
// E[g(Z)] ~= sum_i weights[i] * g(nodes[i]), Z ~ N(0, 1). Weights sum to 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Rules are computed once per node count and cached; the returned reference
// stays valid for the lifetime of the program.
const GaussHermiteRule& gauss_hermite_rule(int n);

}  // namespace cfma
