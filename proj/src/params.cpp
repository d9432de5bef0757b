#include "bergman/params.hpp"

#include <cmath>
#include <sstream>

#include "bergman/geometry.hpp"

namespace bergman {

void SpaceParams::validate() const {
  std::ostringstream os;
  if (n < 1) os << "n must be at least 1";
  else if (!(p > 0.0) || !std::isfinite(p)) os << "p must be in (0, inf), got " << p;
  else if (!(alpha > -1.0) || !std::isfinite(alpha)) os << "alpha must be in (-1, inf), got " << alpha;
  else return;
  throw DomainError(os.str());
}

void PairParams::validate() const {
  source.validate();
  target.validate();
  if (source.n != target.n) throw DomainError("source and target dimensions differ");
}

}  // namespace bergman
