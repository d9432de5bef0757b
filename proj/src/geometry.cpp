#include "bergman/geometry.hpp"

#include <cmath>
#include <sstream>

namespace bergman {

void require_same_dim(std::size_t a, std::size_t b, const char* what) {
  if (a != b) {
    std::ostringstream os;
    os << what << ": dimension mismatch (" << a << " vs " << b << ")";
    throw DomainError(os.str());
  }
}

Complex inner(std::span<const Complex> z, std::span<const Complex> w) {
  require_same_dim(z.size(), w.size(), "inner");
  Complex s{0.0, 0.0};
  for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * std::conj(w[k]);
  return s;
}

double norm_sq(std::span<const Complex> z) {
  double s = 0.0;
  for (const auto& c : z) s += std::norm(c);
  return s;
}

double norm(std::span<const Complex> z) { return std::sqrt(norm_sq(z)); }

double one_minus_norm_sq(std::span<const Complex> z) { return 1.0 - norm_sq(z); }

namespace {

void check_finite(std::span<const Complex> z, const char* what) {
  if (z.empty()) throw DomainError(std::string(what) + ": dimension must be at least 1");
  for (const auto& c : z) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError(std::string(what) + ": non-finite coordinate");
    }
  }
}

}  // namespace

Point::Point(CVec coords) : coords_(std::move(coords)) {
  check_finite(coords_, "Point");
  if (bergman::norm(coords_) > kInteriorLimit) {
    std::ostringstream os;
    os << "Point: |z| = " << bergman::norm(coords_) << " is not interior to the unit ball";
    throw DomainError(os.str());
  }
}

Point Point::along(std::span<const Complex> dir, double r) {
  CVec c(dir.begin(), dir.end());
  for (auto& x : c) x *= r;
  return Point(std::move(c));
}

BoundaryDirection::BoundaryDirection(CVec coords) : coords_(std::move(coords)) {
  check_finite(coords_, "BoundaryDirection");
  const double r = bergman::norm(coords_);
  if (std::abs(r - 1.0) > 1e-9) {
    std::ostringstream os;
    os << "BoundaryDirection: |b| = " << r << " is not 1";
    throw DomainError(os.str());
  }
  for (auto& x : coords_) x /= r;
}

BoundaryDirection BoundaryDirection::diagonal(std::size_t n) {
  if (n == 0) throw DomainError("BoundaryDirection: dimension must be at least 1");
  return BoundaryDirection(CVec(n, Complex{1.0 / std::sqrt(static_cast<double>(n)), 0.0}));
}

BoundaryDirection BoundaryDirection::axis(std::size_t n, std::size_t k) {
  if (k >= n) throw DomainError("BoundaryDirection: axis index out of range");
  CVec c(n, Complex{0.0, 0.0});
  c[k] = 1.0;
  return BoundaryDirection(std::move(c));
}

Complex inner(const Point& z, const Point& w) { return inner(z.span(), w.span()); }

Point moebius(const Point& w, const Point& z) {
  require_same_dim(w.dim(), z.dim(), "moebius");
  const double ww = norm_sq(w.span());
  if (ww == 0.0) return z;  // P_0 is the zero map, phi_0 = id
  const Complex zw = inner(z, w);
  const Complex proj = zw / ww;
  const double s = std::sqrt(1.0 - ww);
  const Complex denom = 1.0 - zw;
  CVec out(w.dim());
  for (std::size_t k = 0; k < w.dim(); ++k) {
    const Complex pz = proj * w[k];
    const Complex qz = z[k] - pz;
    out[k] = (w[k] - pz - s * qz) / denom;
  }
  return Point(std::move(out));
}

namespace {

// |phi_w(z)|^2 through |z-w|^2 - |z ^ (w-z)|^2; accurate for nearby points.
double pseudo_hyperbolic_sq_near(std::span<const Complex> z, std::span<const Complex> w) {
  const std::size_t n = z.size();
  double d2 = 0.0;
  for (std::size_t k = 0; k < n; ++k) d2 += std::norm(w[k] - z[k]);
  double wedge = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Complex di = w[i] - z[i];
      const Complex dj = w[j] - z[j];
      wedge += std::norm(z[i] * dj - z[j] * di);
    }
  }
  const double num = std::max(d2 - wedge, 0.0);
  return num / std::norm(1.0 - inner(z, w));
}

double defect_raw(std::span<const Complex> z, std::span<const Complex> w) {
  return one_minus_norm_sq(w) * one_minus_norm_sq(z) / std::norm(1.0 - inner(z, w));
}

}  // namespace

double moebius_defect(const Point& z, const Point& w) {
  require_same_dim(z.dim(), w.dim(), "moebius_defect");
  return defect_raw(z.span(), w.span());
}

double pseudo_hyperbolic(const Point& z, const Point& w) {
  require_same_dim(z.dim(), w.dim(), "pseudo_hyperbolic");
  const double a = defect_raw(z.span(), w.span());
  if (a > 0.5) return std::sqrt(pseudo_hyperbolic_sq_near(z.span(), w.span()));
  return std::sqrt(std::max(1.0 - a, 0.0));
}

double bergman_distance(std::span<const Complex> z, std::span<const Complex> w) {
  const double a = defect_raw(z, w);
  if (a > 0.5) return std::atanh(std::sqrt(pseudo_hyperbolic_sq_near(z, w)));
  const double rho = std::sqrt(std::max(1.0 - a, 0.0));
  return std::log1p(rho) - 0.5 * std::log(a);
}

double bergman_distance(const Point& z, const Point& w) {
  require_same_dim(z.dim(), w.dim(), "bergman_distance");
  return bergman_distance(z.span(), w.span());
}

double distance_from_origin(double r) { return std::atanh(r); }

MetricBall::MetricBall(Point c, double r) : center(std::move(c)), radius(r) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("MetricBall: radius must be positive");
}

double MetricBall::euclidean_radius_at_origin() const { return std::tanh(radius); }

double moebius_jacobian(const Point& w, std::span<const Complex> u) {
  const double n = static_cast<double>(w.dim());
  const double base = w.one_minus_norm_sq() / std::norm(1.0 - inner(u, w.span()));
  return std::pow(base, n + 1.0);
}

}  // namespace bergman
