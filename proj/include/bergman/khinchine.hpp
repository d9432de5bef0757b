// Rademacher functions and L^p averages of Rademacher sums.
#pragma once

#include <cstdint>
#include <span>

#include "bergman/geometry.hpp"

namespace bergman {

/// r_j(t) = r_0(2^j t), r_0 = +1 on [0,1/2) and -1 on [1/2,1) extended periodically.
int rademacher(unsigned j, double t);

struct KhinchineResult {
  double value = 0.0;
  double std_error = 0.0;
  bool exact = true;
  std::size_t patterns = 0;
};

inline constexpr std::size_t kKhinchineExactLimit = 24;

/// int_0^1 |sum_j c_j r_j(t)|^p dt: the average over all 2^m sign patterns when
/// m <= 24, otherwise a Monte Carlo average over random sign patterns.
KhinchineResult khinchine_integral(std::span<const Complex> c, double p, std::size_t mc_samples = 1 << 20,
                                   std::uint64_t seed = 1);

/// (khinchine_integral)^(1/p) / ||c||_2.
double khinchine_ratio(std::span<const Complex> c, double p);

}  // namespace bergman
