// Shared helpers for the unit tests.
#pragma once

#include <random>

#include "bergman/geometry.hpp"
#include "bergman/polynomial.hpp"

namespace testing {

using bergman::Complex;
using bergman::CVec;

inline Complex unit_square(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

// Uniform in the ball of radius r (rejection from the cube).
inline bergman::Point random_point(std::mt19937_64& rng, std::size_t n, double r = 0.95) {
  for (;;) {
    CVec z(n);
    for (auto& c : z) c = r * unit_square(rng);
    if (bergman::norm(z) < r) return bergman::Point(z);
  }
}

inline bergman::Polynomial random_poly(std::mt19937_64& rng, std::size_t n, std::uint32_t max_deg, int terms) {
  std::uniform_int_distribution<std::uint32_t> deg(0, max_deg);
  bergman::Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    std::vector<std::uint32_t> e(n, 0);
    for (auto& x : e) x = deg(rng) / static_cast<std::uint32_t>(n);
    p.add_term(bergman::MultiIndex(e), unit_square(rng));
  }
  return p;
}

}  // namespace testing
