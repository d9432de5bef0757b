#include "bergman/ray.hpp"

#include <sstream>

namespace bergman {

RadialRule graded_radial_rule(double r_max, int order, double r_min) {
  if (!(r_max > r_min) || r_min < 0.0 || !(r_max < 1.0)) {
    std::ostringstream os;
    os << "graded_radial_rule: need 0 <= r_min < r_max < 1, got [" << r_min << ", " << r_max << "]";
    throw DomainError(os.str());
  }
  std::vector<double> breaks{r_min};
  auto push = [&](double b) {
    if (b > breaks.back() && b < r_max) breaks.push_back(b);
  };
  for (int k = 1; k <= 6; ++k) push(k / 8.0);
  for (double h = 0.25; h > 0.0 && 1.0 - h < r_max; h *= 0.5) push(1.0 - h);
  if (breaks.size() >= 2) {
    const double last = breaks.back();
    const double prev = breaks[breaks.size() - 2];
    if (r_max - last < 0.25 * (last - prev)) breaks.pop_back();
  }
  breaks.push_back(r_max);

  RadialRule rr;
  rr.rule = panel_rule(order);
  const auto& g = *rr.rule;
  for (std::size_t k = 0; k + 1 < breaks.size(); ++k) {
    const double a = breaks[k];
    const double b = breaks[k + 1];
    const double half = 0.5 * (b - a);
    const double one_minus_b = 1.0 - b;
    rr.panels.push_back({a, b, rr.radii.size()});
    for (int i = 0; i < order; ++i) {
      const double x = g.nodes[i];
      rr.one_minus.push_back(one_minus_b + half * (1.0 - x));
      rr.radii.push_back(a + half * (1.0 + x));
      rr.weights.push_back(half * g.weights[i]);
    }
  }
  return rr;
}

}  // namespace bergman
