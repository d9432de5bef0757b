// Geometry of the unit ball B_n in C^n: Hermitian inner product, the
// involutive automorphisms phi_w and the Bergman (invariant) distance.
#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bergman {

using Complex = std::complex<double>;
using CVec = std::vector<Complex>;

/// Raised for arguments outside the mathematical domain of an operation
/// (non-interior points, p <= 0, alpha <= -1, inadmissible exponents, ...).
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Points with |z| above this bound are treated as boundary points.
inline constexpr double kInteriorLimit = 1.0 - 1e-12;

Complex inner(std::span<const Complex> z, std::span<const Complex> w);
double norm_sq(std::span<const Complex> z);
double norm(std::span<const Complex> z);

/// 1 - |z|^2 for a raw coordinate vector.
double one_minus_norm_sq(std::span<const Complex> z);

/// A point of the open unit ball.
class Point {
 public:
  Point() = default;
  explicit Point(CVec coords);
  Point(std::initializer_list<Complex> coords) : Point(CVec(coords)) {}

  static Point origin(std::size_t n) { return Point(CVec(n, Complex{0.0, 0.0})); }
  /// r * dir for a unit direction; validates the result.
  static Point along(std::span<const Complex> dir, double r);

  std::size_t dim() const { return coords_.size(); }
  const CVec& coords() const { return coords_; }
  std::span<const Complex> span() const { return coords_; }
  const Complex& operator[](std::size_t k) const { return coords_[k]; }

  double norm() const { return bergman::norm(coords_); }
  double one_minus_norm_sq() const { return bergman::one_minus_norm_sq(coords_); }

  bool operator==(const Point&) const = default;

 private:
  CVec coords_;
};

/// A unit vector of the sphere, |b| = 1.
class BoundaryDirection {
 public:
  explicit BoundaryDirection(CVec coords);
  /// The normalized diagonal direction (1,...,1)/sqrt(n).
  static BoundaryDirection diagonal(std::size_t n);
  static BoundaryDirection axis(std::size_t n, std::size_t k);

  std::size_t dim() const { return coords_.size(); }
  const CVec& coords() const { return coords_; }
  std::span<const Complex> span() const { return coords_; }

 private:
  CVec coords_;
};

Complex inner(const Point& z, const Point& w);

/// phi_w(z): the automorphism of B_n exchanging 0 and w.
Point moebius(const Point& w, const Point& z);

/// |phi_w(z)| computed without forming the map.
double pseudo_hyperbolic(const Point& z, const Point& w);

/// 1 - |phi_w(z)|^2 = (1-|w|^2)(1-|z|^2)/|1-<z,w>|^2.
double moebius_defect(const Point& z, const Point& w);

/// Bergman distance (1/2) log((1+|phi_w(z)|)/(1-|phi_w(z)|)).
double bergman_distance(const Point& z, const Point& w);

/// Raw-coordinate variant used by hot loops; no validation.
double bergman_distance(std::span<const Complex> z, std::span<const Complex> w);

/// Bergman distance from the origin to a point of Euclidean norm r.
double distance_from_origin(double r);

struct MetricBall {
  Point center;
  double radius;

  MetricBall(Point c, double r);
  bool contains(const Point& z) const { return bergman_distance(center, z) < radius; }
  /// Euclidean radius tanh(radius) of the ball D(0, radius).
  double euclidean_radius_at_origin() const;
};

/// Real Jacobian of u -> phi_w(u): ((1-|w|^2)/|1-<u,w>|^2)^(n+1).
double moebius_jacobian(const Point& w, std::span<const Complex> u);

void require_same_dim(std::size_t a, std::size_t b, const char* what);

}  // namespace bergman
