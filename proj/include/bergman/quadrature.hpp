// Integration against dv_alpha = (1-|z|^2)^alpha dv on truncated balls
// |z| <= r_max, with dv the unnormalized Lebesgue volume of C^n = R^2n.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/ray.hpp"

namespace bergman {

struct QuadratureSpec {
  double r_max = 0.999;
  int radial_nodes = 16;     // Gauss order of each radial panel (n = 1)
  int angular_nodes = 512;   // trapezoid points, or 32 x panel order when focused
  int mc_samples = 1 << 17;  // n >= 2
  std::uint64_t seed = 20240607;
  bool richardson = false;   // extrapolate r_max -> 1 from r_max and 1 - 2(1 - r_max)

  void validate() const;
  /// Doubled radial order, angular count and Monte Carlo budget.
  QuadratureSpec refined() const;
  QuadratureSpec with_r_max(double r) const;
  int angular_panel_order() const { return angular_nodes / 32 < 8 ? 8 : angular_nodes / 32; }
};

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;  // zero for the deterministic n = 1 engine
  std::size_t evaluations = 0;
};

/// Real integrand sampled along a ray: out[i] = F(radii[i] * dir).
using RayIntegrand =
    std::function<void(std::span<const Complex> dir, const RadialSamples& samples, std::span<double> out)>;

using PointIntegrand = std::function<double(std::span<const Complex> z)>;

/// int_{|z| <= r_max} F (1-|z|^2)^alpha dv. `focus` lists unit directions
/// near which F concentrates; for n = 1 the angular rule is graded there.
Estimate integrate_weighted(const RayIntegrand& F, std::size_t n, double alpha, const QuadratureSpec& spec,
                            std::span<const CVec> focus = {});

Estimate integrate_weighted(const PointIntegrand& F, std::size_t n, double alpha, const QuadratureSpec& spec);

/// int_{D(center, radius)} F (1-|z|^2)^alpha dv by the change of variables z = phi_center(u).
Estimate integrate_metric_ball(const PointIntegrand& F, const MetricBall& ball, double alpha,
                               const QuadratureSpec& spec);

/// Weighted volume v_alpha(D(z, r)).
double metric_ball_volume(const MetricBall& ball, double alpha, const QuadratureSpec& spec);

/// Surface area of the unit sphere S^{2n-1}: 2 pi^n / (n-1)!.
double sphere_area(std::size_t n);

struct AngularRule {
  std::vector<double> theta;
  std::vector<double> weights;
};

/// Uniform trapezoid on [0, 2pi), or Gauss panels graded geometrically toward
/// each focus angle down to (1 - r_max) / 2 when at most eight focus angles are given.
AngularRule angular_rule(const QuadratureSpec& spec, std::span<const double> focus_angles);

/// Deterministic uniform directions on S^{2n-1} for a given seed and index.
CVec sphere_direction(std::size_t n, std::uint64_t seed, std::uint64_t index);

/// Stream splitting for per-index generators.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace bergman
