#include "bergman/gauss.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace bergman {

namespace {

// P_n(x) and P_n'(x) by the three-term recurrence.
std::pair<double, double> legendre(int n, double x) {
  double p0 = 1.0;
  double p1 = x;
  if (n == 0) return {1.0, 0.0};
  for (int k = 2; k <= n; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  const double dp = n * (x * p1 - p0) / (x * x - 1.0);
  return {p1, dp};
}

std::shared_ptr<GaussRule> build_rule(int order) {
  auto rule = std::make_shared<GaussRule>();
  rule->order = order;
  rule->nodes.resize(order);
  rule->weights.resize(order);
  for (int i = 0; i < (order + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    for (int it = 0; it < 100; ++it) {
      auto [p, dp] = legendre(order, x);
      const double dx = p / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    auto [p, dp] = legendre(order, x);
    (void)p;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule->nodes[i] = -x;
    rule->nodes[order - 1 - i] = x;
    rule->weights[i] = w;
    rule->weights[order - 1 - i] = w;
  }
  if (order % 2 == 1) rule->nodes[order / 2] = 0.0;
  return rule;
}

std::shared_ptr<GaussRule> build_panel_rule(int order) {
  auto rule = std::make_shared<GaussRule>(*gauss_legendre(order));
  // Running integrals of the Lagrange basis; a degree order-1 integrand is
  // integrated exactly by the same rule mapped to [-1, x_i].
  rule->integration.assign(static_cast<std::size_t>(order) * order, 0.0);
  const auto& xs = rule->nodes;
  for (int i = 0; i < order; ++i) {
    const double half = 0.5 * (xs[i] + 1.0);
    const double mid = 0.5 * (xs[i] - 1.0);
    for (int q = 0; q < order; ++q) {
      const double t = mid + half * xs[q];
      const double wq = half * rule->weights[q];
      for (int j = 0; j < order; ++j) {
        double l = 1.0;
        for (int k = 0; k < order; ++k) {
          if (k != j) l *= (t - xs[k]) / (xs[j] - xs[k]);
        }
        rule->integration[static_cast<std::size_t>(i) * order + j] += wq * l;
      }
    }
  }
  return rule;
}

}  // namespace

std::shared_ptr<const GaussRule> gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("gauss_legendre: order must be positive");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GaussRule>> cache;
  std::lock_guard lock(mu);
  auto it = cache.find(order);
  if (it != cache.end()) return it->second;
  auto rule = build_rule(order);
  cache.emplace(order, rule);
  return rule;
}

std::shared_ptr<const GaussRule> panel_rule(int order) {
  if (order < 1 || order > 128) throw std::invalid_argument("panel_rule: order must be in [1, 128]");
  static std::mutex mu;
  static std::map<int, std::shared_ptr<const GaussRule>> cache;
  {
    std::lock_guard lock(mu);
    auto it = cache.find(order);
    if (it != cache.end()) return it->second;
  }
  auto rule = build_panel_rule(order);
  std::lock_guard lock(mu);
  return cache.emplace(order, rule).first->second;
}

double integrate_interval(const std::function<double(double)>& f, double a, double b, int order) {
  const auto rule = gauss_legendre(order);
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (b + a);
  double s = 0.0;
  for (int i = 0; i < order; ++i) s += rule->weights[i] * f(mid + half * rule->nodes[i]);
  return half * s;
}

}  // namespace bergman
