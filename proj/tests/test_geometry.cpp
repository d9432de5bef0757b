#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/geometry.hpp"
#include "support.hpp"

using namespace bergman;

TEST_CASE("points must be interior") {
  CHECK_THROWS_AS(Point({1.0}), DomainError);
  CHECK_THROWS_AS(Point({0.8, 0.7}), DomainError);
  CHECK_THROWS_AS(Point(CVec{}), DomainError);
  CHECK_NOTHROW(Point({0.5, Complex{0.0, 0.5}}));
  CHECK_THROWS_AS(BoundaryDirection({0.5}), DomainError);
  CHECK(norm(BoundaryDirection::diagonal(3).span()) == doctest::Approx(1.0));
}

TEST_CASE("inner product is conjugate linear in the second slot") {
  const CVec z{Complex{1, 2}, Complex{0, 1}};
  const CVec w{Complex{0, 1}, Complex{3, 0}};
  // <z,w> = sum z_k conj(w_k)
  CHECK(inner(z, w) == Complex{1, 2} * Complex{0, -1} + Complex{0, 1} * 3.0);
  CHECK(std::abs(inner(z, z) - norm_sq(z)) < 1e-15);
}

TEST_CASE("phi_w exchanges 0 and w") {
  const Point w{Complex{0.3, -0.4}, Complex{0.1, 0.2}};
  const Point phi0 = moebius(w, Point::origin(2));
  const Point phiw = moebius(w, w);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(std::abs(phi0[k] - w[k]) < 1e-15);
    CHECK(std::abs(phiw[k]) < 1e-15);
  }
  // phi_0 is the identity
  const Point z{0.2, Complex{0.0, -0.3}};
  CHECK(moebius(Point::origin(2), z) == z);
}

TEST_CASE("property: phi_w is an involution") {
  std::mt19937_64 rng(11);
  for (std::size_t n : {1u, 2u, 3u}) {
    for (int k = 0; k < 200; ++k) {
      const Point w = testing::random_point(rng, n);
      const Point z = testing::random_point(rng, n);
      const Point back = moebius(w, moebius(w, z));
      for (std::size_t j = 0; j < n; ++j) CHECK(std::abs(back[j] - z[j]) < 1e-9);
    }
  }
}

TEST_CASE("property: defect identity for phi_w") {
  std::mt19937_64 rng(12);
  for (std::size_t n : {1u, 2u}) {
    for (int k = 0; k < 200; ++k) {
      const Point w = testing::random_point(rng, n, 0.99);
      const Point z = testing::random_point(rng, n, 0.99);
      const double lhs = 1.0 - norm_sq(moebius(w, z).span());
      const double rhs = w.one_minus_norm_sq() * z.one_minus_norm_sq() / std::norm(1.0 - inner(z, w));
      CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
      CHECK(moebius_defect(z, w) == doctest::Approx(rhs).epsilon(1e-12));
    }
  }
}

TEST_CASE("distance from the origin is atanh |z|") {
  for (double r : {0.0, 0.1, 0.5, 0.9, 0.999999}) {
    CHECK(bergman_distance(Point::origin(1), Point{r}) == doctest::Approx(std::atanh(r)).epsilon(1e-12));
    CHECK(distance_from_origin(r) == doctest::Approx(std::atanh(r)).epsilon(1e-14));
  }
}

TEST_CASE("distance resolves points very close to the sphere") {
  const Point a{1.0 - 1e-12};
  const Point b{1.0 - 2e-12};
  // atanh difference: 0.5 log((1-b)/(1-a)) approximately 0.5 log 2
  CHECK(bergman_distance(a, b) == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-3));
}

TEST_CASE("property: distance is symmetric, invariant and satisfies the triangle inequality") {
  std::mt19937_64 rng(13);
  for (int k = 0; k < 300; ++k) {
    const std::size_t n = k % 2 + 1;
    const Point a = testing::random_point(rng, n), b = testing::random_point(rng, n);
    const Point c = testing::random_point(rng, n), w = testing::random_point(rng, n, 0.9);
    const double dab = bergman_distance(a, b);
    CHECK(dab == doctest::Approx(bergman_distance(b, a)).epsilon(1e-12));
    CHECK(dab <= bergman_distance(a, c) + bergman_distance(c, b) + 1e-9);
    CHECK(bergman_distance(moebius(w, a), moebius(w, b)) == doctest::Approx(dab).epsilon(1e-7));
    CHECK(pseudo_hyperbolic(a, b) == doctest::Approx(std::tanh(dab)).epsilon(1e-10));
  }
}

TEST_CASE("metric balls centred at 0 are Euclidean balls of radius tanh") {
  const MetricBall ball(Point::origin(1), 1.0);
  CHECK(ball.euclidean_radius_at_origin() == doctest::Approx(std::tanh(1.0)));
  CHECK(ball.contains(Point{std::tanh(1.0) - 1e-9}));
  CHECK_FALSE(ball.contains(Point{std::tanh(1.0) + 1e-9}));
  CHECK_THROWS_AS(MetricBall(Point::origin(1), 0.0), DomainError);
}

TEST_CASE("metric disk D(w, r) in the disk has the Mobius-image center and radius") {
  const double w = 0.6, rho = 0.7, t = std::tanh(rho);
  const double center = w * (1 - t * t) / (1 - t * t * w * w);
  const double radius = t * (1 - w * w) / (1 - t * t * w * w);
  const MetricBall ball(Point{w}, rho);
  for (int k = 0; k < 64; ++k) {
    const Complex e = std::polar(1.0, 2.0 * std::numbers::pi * k / 64);
    CHECK(ball.contains(Point{center + (radius - 1e-9) * e}));
    CHECK_FALSE(ball.contains(Point{center + (radius + 1e-9) * e}));
  }
}

TEST_CASE("moebius Jacobian at the origin") {
  const Point w{0.5};
  // ((1 - |w|^2)/|1 - 0|^2)^(n+1)
  CHECK(moebius_jacobian(w, Point::origin(1).span()) == doctest::Approx(0.75 * 0.75));
}
