#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"

using namespace bergman;

namespace {

constexpr double kPi = std::numbers::pi;

double one(std::span<const Complex>) { return 1.0; }

RayIntegrand ray_one() {
  return [](std::span<const Complex>, const RadialSamples& s, std::span<double> out) {
    for (std::size_t i = 0; i < s.radii.size(); ++i) out[i] = 1.0;
  };
}

}  // namespace

TEST_CASE("sphere areas") {
  CHECK(sphere_area(1) == doctest::Approx(2 * kPi));
  CHECK(sphere_area(2) == doctest::Approx(2 * kPi * kPi));
  CHECK(sphere_area(3) == doctest::Approx(kPi * kPi * kPi));
}

TEST_CASE("weighted volume of the truncated disk") {
  // int_{|z|<r} (1-|z|^2)^alpha dA = pi (1 - (1-r^2)^(alpha+1)) / (alpha+1)
  for (double alpha : {0.0, 1.0, -0.5, 2.5}) {
    QuadratureSpec spec;
    spec.r_max = 0.99;
    const double exact = kPi * (1.0 - std::pow(1.0 - 0.99 * 0.99, alpha + 1.0)) / (alpha + 1.0);
    CHECK(integrate_weighted(ray_one(), 1, alpha, spec).value == doctest::Approx(exact).epsilon(1e-12));
  }
}

TEST_CASE("Richardson extrapolation recovers the full-disk volume") {
  QuadratureSpec spec;
  spec.r_max = 1.0 - 1e-9;
  spec.richardson = true;
  CHECK(integrate_weighted(ray_one(), 1, 0.0, spec).value == doctest::Approx(kPi).epsilon(1e-12));
}

TEST_CASE("Monte Carlo volume for n = 2") {
  QuadratureSpec spec;
  const double r = spec.r_max, r4 = std::pow(r, 4), r6 = std::pow(r, 6);
  // 2 pi^2 int_0^r t^3 (1-t^2)^alpha dt
  const double exact[] = {kPi * kPi * r4 / 2, 2 * kPi * kPi * (r4 / 4 - r6 / 6)};
  for (int a = 0; a < 2; ++a) {
    const Estimate e = integrate_weighted(PointIntegrand(one), 2, a, spec);
    CHECK(std::abs(e.value - exact[a]) < 5.0 * e.std_error + 1e-6 * exact[a]);
    const Estimate er = integrate_weighted(ray_one(), 2, a, spec);
    CHECK(std::abs(er.value - exact[a]) < 5.0 * er.std_error + 1e-6 * exact[a]);
  }
  spec.richardson = true;
  spec.r_max = 1.0 - 1e-6;
  CHECK(integrate_weighted(ray_one(), 2, 0.0, spec).value == doctest::Approx(kPi * kPi / 2).epsilon(1e-5));
}

TEST_CASE("Monte Carlo integrates a monomial modulus for n = 2") {
  // int_{|z| < r} |z1|^2 dv = pi^2 r^6 / 6
  QuadratureSpec spec;
  const Estimate e = integrate_weighted(PointIntegrand([](std::span<const Complex> z) { return std::norm(z[0]); }), 2,
                                        0.0, spec);
  CHECK(std::abs(e.value - kPi * kPi * std::pow(spec.r_max, 6) / 6.0) < 5.0 * e.std_error);
}

TEST_CASE("metric ball volume at the origin") {
  const MetricBall ball(Point::origin(1), 0.8);
  const double t = std::tanh(0.8);
  CHECK(metric_ball_volume(ball, 0.0, QuadratureSpec{}) == doctest::Approx(kPi * t * t).epsilon(1e-10));
}

TEST_CASE("metric ball volume off the origin") {
  // D(w, rho) is the Euclidean disk with radius t(1-|w|^2)/(1-t^2|w|^2)
  const double w = 0.7, t = std::tanh(0.5);
  const double radius = t * (1 - w * w) / (1 - t * t * w * w);
  const MetricBall ball(Point{w}, 0.5);
  CHECK(metric_ball_volume(ball, 0.0, QuadratureSpec{}) == doctest::Approx(kPi * radius * radius).epsilon(1e-8));
}

TEST_CASE("angular rule weights sum to 2 pi") {
  QuadratureSpec spec;
  spec.r_max = 1.0 - 1e-6;
  for (std::vector<double> focus : {std::vector<double>{}, std::vector<double>{0.0}, std::vector<double>{0.5, 2.0, -1.0}}) {
    const AngularRule rule = angular_rule(spec, focus);
    double s = 0.0;
    for (double w : rule.weights) s += w;
    CHECK(s == doctest::Approx(2 * kPi).epsilon(1e-12));
  }
}

TEST_CASE("quadrature spec validation") {
  QuadratureSpec s;
  s.r_max = 1.0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  s.r_max = 0.9;
  s.radial_nodes = 0;
  CHECK_THROWS_AS(s.validate(), DomainError);
  const QuadratureSpec r = QuadratureSpec{}.refined();
  CHECK(r.radial_nodes == 32);
  CHECK(r.angular_nodes == 1024);
  CHECK(r.mc_samples == 4 * (1 << 17));
  CHECK_THROWS_AS(integrate_weighted(ray_one(), 1, -1.0, QuadratureSpec{}), DomainError);
}

TEST_CASE("property: results do not depend on the thread count") {
  const PointIntegrand f = [](std::span<const Complex> z) { return std::norm(z[0] - 0.3 * z[1]) + 1.0; };
  QuadratureSpec spec;
  spec.mc_samples = 1 << 14;
  const int saved = thread_count();
  set_thread_count(1);
  const double a = integrate_weighted(f, 2, 0.5, spec).value;
  const double a1 = integrate_weighted(ray_one(), 1, 0.5, spec).value;
  set_thread_count(4);
  const double b = integrate_weighted(f, 2, 0.5, spec).value;
  const double b1 = integrate_weighted(ray_one(), 1, 0.5, spec).value;
  set_thread_count(saved);
  CHECK(a == b);
  CHECK(a1 == b1);
}

TEST_CASE("sphere directions are unit vectors and reproducible") {
  for (std::uint64_t i = 0; i < 50; ++i) {
    const CVec d = sphere_direction(3, 99, i);
    CHECK(norm(d) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(d == sphere_direction(3, 99, i));
  }
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
}

TEST_CASE("pairwise sum is exact on small integers and order independent of threads") {
  std::vector<double> v(1000);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i);
  CHECK(pairwise_sum(v) == 499500.0);
}
