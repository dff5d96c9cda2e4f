#include "cfma/gauss_hermite.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <string>

#include <Eigen/Eigenvalues>

#include "cfma/error.hpp"

namespace cfma {

namespace {

// Golub-Welsch: the nodes of the probabilists' rule are the eigenvalues of
// the Jacobi matrix with zero diagonal and off-diagonal sqrt(k). Each node is
// then polished by Newton iteration on the orthonormal recurrence, which also
// gives weights accurate far into the tails.
GaussHermiteRule build(int n) {
  GaussHermiteRule rule;
  rule.nodes.assign(n, 0.0);
  rule.weights.assign(n, 0.0);
  if (n == 1) {
    rule.weights[0] = 1.0;
    return rule;
  }

  Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int k = 1; k < n; ++k) off[k - 1] = std::sqrt(static_cast<double>(k));
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diagonal, off, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& guesses = solver.eigenvalues();  // ascending

  for (int i = 0; i < n; ++i) {
    double x = guesses[i];
    double p_prev = 0.0;
    for (int it = 0; it < 8; ++it) {
      // Orthonormal probabilists' Hermite: p_{k+1} = (x p_k - sqrt(k) p_{k-1}) / sqrt(k+1)
      double p0 = 0.0;
      double p1 = 1.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = (x * p1 - std::sqrt(static_cast<double>(k)) * p0) / std::sqrt(k + 1.0);
        p0 = p1;
        p1 = p2;
      }
      p_prev = p0;  // p_{n-1}
      const double derivative = std::sqrt(static_cast<double>(n)) * p_prev;
      const double step = p1 / derivative;
      x -= step;
      if (std::abs(step) <= 1e-16 * std::max(1.0, std::abs(x))) break;
    }
    // Recompute p_{n-1} at the polished node for the weight.
    double p0 = 0.0;
    double p1 = 1.0;
    for (int k = 0; k < n - 1; ++k) {
      const double p2 = (x * p1 - std::sqrt(static_cast<double>(k)) * p0) / std::sqrt(k + 1.0);
      p0 = p1;
      p1 = p2;
    }
    rule.nodes[i] = x;
    rule.weights[i] = 1.0 / (n * p1 * p1);
  }
  // Symmetrize to remove rounding asymmetry.
  for (int i = 0; i < n / 2; ++i) {
    const double x = 0.5 * (rule.nodes[n - 1 - i] - rule.nodes[i]);
    const double w = 0.5 * (rule.weights[i] + rule.weights[n - 1 - i]);
    rule.nodes[i] = -x;
    rule.nodes[n - 1 - i] = x;
    rule.weights[i] = rule.weights[n - 1 - i] = w;
  }
  if (n % 2 == 1) rule.nodes[n / 2] = 0.0;
  return rule;
}

}  // namespace

const GaussHermiteRule& gauss_hermite_rule(int n) {
  if (n < 1 || n > 1024) {
    throw Error(ErrorCode::InvalidArgument, "nodes",
                "Gauss-Hermite node count must be in [1, 1024], got " + std::to_string(n));
  }
  static std::mutex mutex;
  static std::map<int, std::unique_ptr<GaussHermiteRule>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[n];
  if (!slot) slot = std::make_unique<GaussHermiteRule>(build(n));
  return *slot;
}

}  // namespace cfma
