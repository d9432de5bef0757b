// Bergman-metric lattices on truncated balls, their certification, atoms
// and atomic synthesis.
#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/holo.hpp"
#include "bergman/params.hpp"

namespace bergman {

struct LatticeCert {
  bool verified = false;
  bool covering_ok = false;
  bool separation_ok = false;  // pairwise distances >= eta/2, exhaustive
  bool disjoint_ok = false;    // no probe in two eta/4-balls
  int overlap_max = 0;         // max over probes of #{j : d(probe, z_j) < 2 eta}
  double min_separation = 0.0;
  std::size_t probes = 0;
  std::uint64_t seed = 0;
  std::optional<Point> witness;  // first uncovered probe
};

struct Lattice {
  std::size_t n = 1;
  double eta = 0.5;
  double r_max = 0.99;
  int density = 4;
  std::size_t candidates = 0;
  std::vector<Point> nodes;
  LatticeCert cert;
};

/// Greedy maximal eta/2-separated subset of a candidate set with hyperbolic
/// spacing (eta/2)/density, scanned from the origin and then boundary-inward.
Lattice build_lattice(double eta, double r_max, std::size_t n = 1, int candidate_density = 4);

/// Covering, separation, disjointness and overlap checks; probes are uniform
/// in the truncated ball.
LatticeCert verify_lattice(const Lattice& lat, std::size_t probe_count, std::uint64_t seed = 1);

/// Hyperbolic area pi r^2/(1-r^2) of |z| <= r divided by pi sinh(eta/2) sinh(eta/4) (n = 1).
double predicted_node_count(double eta, double r_max);

/// Radius query structure over lattice nodes.
class LatticeIndex {
 public:
  LatticeIndex(std::size_t n, double max_radius);
  void insert(const Point& z);
  std::size_t size() const { return points_.size(); }
  /// Calls visit(index, distance) for every node with distance < radius (radius <= max_radius).
  void query(std::span<const Complex> z, double radius, const std::function<void(std::size_t, double)>& visit) const;

 private:
  struct Entry {
    double angle;
    std::size_t index;
  };
  std::size_t n_;
  double bin_width_;
  std::vector<CVec> points_;
  std::vector<std::vector<Entry>> bins_;  // by distance from 0; sorted by angle when n = 1
};

/// n max(1, 1/p) + (1+alpha)/p; atoms need b strictly above it.
double atom_exponent_bound(const SpaceParams& space);
/// ceil(bound) + 1.
double default_atom_exponent(const SpaceParams& space);

/// (1-|z_j|^2)^((pb-n-1-alpha)/p) (1-<z,z_j>)^(-b).
HoloFunction atom(const Point& zj, double b, const SpaceParams& space);

/// sum_j c_j atom(z_j, b).
HoloFunction synthesize(std::span<const Complex> coeffs, const Lattice& lat, double b, const SpaceParams& space);

/// (sum |c_j|^p)^(1/p).
double lp_norm(std::span<const Complex> coeffs, double p);

}  // namespace bergman
