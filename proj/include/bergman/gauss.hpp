// Gauss-Legendre rules on [-1, 1] and the spectral integration matrix used
// to form running integrals on a panel.
#pragma once

#include <algorithm>
#include <functional>
#include <memory>
#include <vector>

namespace bergman {

struct GaussRule {
  int order = 0;
  std::vector<double> nodes;    // ascending, in (-1, 1)
  std::vector<double> weights;
  // integration[i * order + j] = int_{-1}^{nodes[i]} l_j(x) dx, l_j the Lagrange basis.
  // Only filled by panel_rule().
  std::vector<double> integration;
};

/// Cached rule of the given order (order >= 1); thread-safe.
std::shared_ptr<const GaussRule> gauss_legendre(int order);

/// Cached rule with the integration matrix; order <= 128.
std::shared_ptr<const GaussRule> panel_rule(int order);

/// int_a^b f(x) dx with a single mapped rule.
double integrate_interval(const std::function<double(double)>& f, double a, double b, int order);

/// int_a^b f(x) dx with pieces graded geometrically toward x = 1 so that every
/// piece is no longer than its distance to 1; a < b <= 1.
template <typename T, typename F>
T integrate_toward_one(F&& f, double a, double b, const GaussRule& rule) {
  T total{};
  double left = a;
  while (left < b) {
    double right = b;
    const double gap = 1.0 - left;
    if (right - left > 0.5 * gap && gap > 0.0) right = std::min(b, left + 0.5 * gap);
    const double half = 0.5 * (right - left);
    const double mid = 0.5 * (right + left);
    T piece{};
    for (int i = 0; i < rule.order; ++i) piece += rule.weights[i] * f(mid + half * rule.nodes[i]);
    total += half * piece;
    if (right >= b) break;
    left = right;
  }
  return total;
}

}  // namespace bergman
