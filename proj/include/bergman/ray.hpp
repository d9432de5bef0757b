// Radial sampling along rays r -> r * dir, shared by function evaluation and
// the ball quadrature.
#pragma once

#include <memory>
#include <span>
#include <vector>

#include "bergman/gauss.hpp"
#include "bergman/geometry.hpp"

namespace bergman {

struct RadialPanel {
  double a = 0.0;
  double b = 0.0;
  std::size_t first = 0;  // index of the first node of this panel
};

/// Ascending radii on one ray. When `panels` is non-empty the radii are the
/// Gauss nodes of consecutive panels (in order) of the attached rule.
struct RadialSamples {
  std::span<const double> radii;
  std::span<const double> one_minus;  // 1 - radii, accurate near 1
  std::span<const RadialPanel> panels;
  const GaussRule* rule = nullptr;
};

/// Composite Gauss-Legendre rule on [r_min, r_max]: panels of width <= 1/8,
/// graded geometrically toward r = 1 (each panel no wider than its distance to 1).
struct RadialRule {
  std::vector<double> radii;
  std::vector<double> one_minus;
  std::vector<double> weights;
  std::vector<RadialPanel> panels;
  std::shared_ptr<const GaussRule> rule;

  RadialSamples samples() const { return {radii, one_minus, panels, rule.get()}; }
};

RadialRule graded_radial_rule(double r_max, int order, double r_min = 0.0);

/// A complex-valued function sampled along rays of the ball.
class RayFunction {
 public:
  virtual ~RayFunction() = default;
  virtual std::size_t dim() const = 0;
  /// out[i] = F(radii[i] * dir) for a unit vector dir.
  virtual void eval_ray(std::span<const Complex> dir, const RadialSamples& samples,
                        std::span<Complex> out) const = 0;
  /// Unit directions along which the function concentrates near the sphere.
  virtual std::vector<CVec> focus_directions() const { return {}; }
};

}  // namespace bergman
