// Parameters identifying the weighted Bergman spaces A^p_alpha and operator pairs.
#pragma once

#include <cstddef>

namespace bergman {

struct SpaceParams {
  std::size_t n = 1;
  double p = 2.0;
  double alpha = 0.0;

  void validate() const;
  /// n + 1 + alpha, the critical exponent of the space.
  double critical() const { return static_cast<double>(n) + 1.0 + alpha; }
};

/// T_g : source -> target; target.p and target.alpha play the roles of q and beta.
struct PairParams {
  SpaceParams source;
  SpaceParams target;

  void validate() const;
  std::size_t n() const { return source.n; }
  double p() const { return source.p; }
  double q() const { return target.p; }
  double alpha() const { return source.alpha; }
  double beta() const { return target.alpha; }
  bool p_greater_than_q() const { return source.p > target.p; }
};

}  // namespace bergman
