#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/lattice.hpp"
#include "bergman/norms.hpp"
#include "support.hpp"

using namespace bergman;

TEST_CASE("a small lattice is certified") {
  const Lattice lat = build_lattice(0.5, 0.9);
  REQUIRE_FALSE(lat.nodes.empty());
  CHECK(lat.nodes.front() == Point::origin(1));
  const LatticeCert c = verify_lattice(lat, 20000, 3);
  CHECK(c.verified);
  CHECK(c.covering_ok);
  CHECK(c.separation_ok);
  CHECK(c.disjoint_ok);
  CHECK(c.min_separation >= 0.25 - 1e-12);
  CHECK(c.overlap_max > 0);
  CHECK_FALSE(c.witness.has_value());
}

TEST_CASE("property: pairwise separation holds for every parameter") {
  for (double eta : {0.3, 0.7, 1.0}) {
    const Lattice lat = build_lattice(eta, 0.8);
    double dmin = INFINITY;
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < lat.nodes.size(); ++j) {
        dmin = std::min(dmin, bergman_distance(lat.nodes[i], lat.nodes[j]));
      }
    }
    CHECK(dmin >= eta / 2 - 1e-12);
  }
}

TEST_CASE("lattice building is deterministic") {
  const Lattice a = build_lattice(0.5, 0.95);
  const Lattice b = build_lattice(0.5, 0.95);
  CHECK(a.nodes == b.nodes);
}

TEST_CASE("node count tracks the hyperbolic area") {
  const Lattice lat = build_lattice(0.5, 0.99);
  const double ratio = lat.nodes.size() / predicted_node_count(0.5, 0.99);
  CHECK(ratio > 0.5);
  CHECK(ratio < 2.0);
}

TEST_CASE("verification detects a hole") {
  Lattice lat = build_lattice(0.5, 0.9);
  std::erase_if(lat.nodes, [](const Point& z) { return z.norm() < std::tanh(1.0); });
  const LatticeCert c = verify_lattice(lat, 50000, 1);
  CHECK_FALSE(c.covering_ok);
  CHECK_FALSE(c.verified);
  REQUIRE(c.witness.has_value());
}

TEST_CASE("lattice parameters are validated") {
  CHECK_THROWS_AS(build_lattice(0.0, 0.9), DomainError);
  CHECK_THROWS_AS(build_lattice(1.2, 0.9), DomainError);
  CHECK_THROWS_AS(build_lattice(0.5, 1.0), DomainError);
  CHECK_THROWS_AS(build_lattice(0.5, 0.9, 1, 0), DomainError);
}

TEST_CASE("n = 2 lattices are separated and cover") {
  const Lattice lat = build_lattice(1.0, 0.6, 2);
  const LatticeCert c = verify_lattice(lat, 5000, 2);
  CHECK(c.separation_ok);
  CHECK(c.covering_ok);
}

TEST_CASE("property: index queries match brute force") {
  std::mt19937_64 rng(51);
  LatticeIndex idx(1, 1.0);
  std::vector<Point> pts;
  for (int k = 0; k < 400; ++k) {
    pts.push_back(testing::random_point(rng, 1, 0.99));
    idx.insert(pts.back());
  }
  for (int q = 0; q < 100; ++q) {
    const Point z = testing::random_point(rng, 1, 0.99);
    std::vector<std::size_t> got;
    idx.query(z.span(), 0.8, [&](std::size_t i, double) { got.push_back(i); });
    std::vector<std::size_t> want;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (bergman_distance(z, pts[i]) < 0.8) want.push_back(i);
    }
    std::sort(got.begin(), got.end());
    CHECK(got == want);
  }
}

TEST_CASE("atoms") {
  const SpaceParams s{1, 2.0, 0.0};
  CHECK(atom_exponent_bound(s) == doctest::Approx(1.5));
  CHECK(default_atom_exponent(s) == doctest::Approx(3.0));
  CHECK(atom_exponent_bound(SpaceParams{1, 0.5, 0.0}) == doctest::Approx(4.0));
  const HoloFunction a0 = atom(Point::origin(1), 3.0, s);
  CHECK(std::abs(a0(Point{0.4}) - 1.0) < 1e-15);
  CHECK_THROWS_AS(atom(Point{0.5}, 1.5, s), DomainError);
  CHECK_NOTHROW(atom(Point{0.5}, 1.6, s));
}

TEST_CASE("property: atoms have comparable norms") {
  // ||atom(z_j)|| is bounded above and below independently of z_j
  const SpaceParams s{1, 2.0, 0.0};
  QuadratureSpec spec;
  spec.r_max = 1.0 - 1e-7;
  spec.richardson = true;
  double lo = INFINITY, hi = 0.0;
  for (double r : {0.0, 0.5, 0.9, 0.99, 0.999}) {
    const double v = bergman_norm(atom(Point{r}, 3.0, s), s, spec).value;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  CHECK(hi / lo < 2.0);
}

TEST_CASE("synthesis and coefficient norms") {
  const Lattice lat = build_lattice(1.0, 0.5);
  std::vector<Complex> c(lat.nodes.size(), 0.0);
  c[0] = 2.0;
  const SpaceParams s{1, 2.0, 0.0};
  const HoloFunction f = synthesize(c, lat, 3.0, s);
  CHECK(std::abs(f(Point{0.3}) - 2.0) < 1e-14);
  CHECK(lp_norm(std::vector<Complex>{3.0, 4.0}, 2.0) == doctest::Approx(5.0));
  CHECK(lp_norm(std::vector<Complex>{1.0, 1.0}, 1.0) == doctest::Approx(2.0));
}
