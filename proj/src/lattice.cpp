#include "bergman/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

#include "bergman/parallel.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

std::vector<CVec> candidate_ring(std::size_t n, double r, double spacing, std::size_t ring) {
  std::vector<CVec> out;
  const double circ = r / (1.0 - r * r);
  if (n == 1) {
    const auto m = static_cast<std::size_t>(std::max(1.0, std::ceil(kTwoPi * circ / spacing)));
    const double offset = (ring % 2 == 1) ? 0.5 : 0.0;
    for (std::size_t k = 0; k < m; ++k) out.push_back(CVec{std::polar(r, kTwoPi * (k + offset) / m)});
    return out;
  }
  // Complex-normal directions scale like 1/(1-r^2), the 2n-2 tangential ones like 1/sqrt(1-r^2).
  const double tangential = r / std::sqrt(1.0 - r * r);
  const double count = sphere_area(n) * circ * std::pow(tangential, 2.0 * n - 2.0) / std::pow(spacing, 2.0 * n - 1.0);
  const auto m = static_cast<std::size_t>(std::clamp(std::ceil(count), 1.0, 20000.0));
  for (std::size_t k = 0; k < m; ++k) {
    CVec d = sphere_direction(n, 0xC0FFEEULL + ring, k);
    for (auto& c : d) c *= r;
    out.push_back(std::move(d));
  }
  return out;
}

CVec random_probe(std::size_t n, double r_max, std::uint64_t seed, std::uint64_t i) {
  std::mt19937_64 rng(mix_seed(seed, i));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  const double r = r_max * std::pow(uni(rng), 1.0 / (2.0 * static_cast<double>(n)));
  if (n == 1) return CVec{std::polar(r, kTwoPi * uni(rng))};
  CVec d = sphere_direction(n, seed ^ 0xA5A5A5A5ULL, i);
  for (auto& c : d) c *= r;
  return d;
}

}  // namespace

LatticeIndex::LatticeIndex(std::size_t n, double max_radius) : n_(n), bin_width_(max_radius) {
  if (!(max_radius > 0.0)) throw DomainError("LatticeIndex: radius must be positive");
}

void LatticeIndex::insert(const Point& z) {
  const double rho = distance_from_origin(z.norm());
  const auto bin = static_cast<std::size_t>(rho / bin_width_);
  if (bins_.size() <= bin) bins_.resize(bin + 1);
  const double angle = n_ == 1 ? wrap_angle(std::arg(z[0])) : 0.0;
  auto& b = bins_[bin];
  const Entry e{angle, points_.size()};
  b.insert(std::upper_bound(b.begin(), b.end(), e, [](const Entry& x, const Entry& y) { return x.angle < y.angle; }),
           e);
  points_.push_back(z.coords());
}

void LatticeIndex::query(std::span<const Complex> z, double radius,
                         const std::function<void(std::size_t, double)>& visit) const {
  if (bins_.empty()) return;
  const double rz = norm(z);
  const double rho = distance_from_origin(rz);
  const double lo = std::max(0.0, rho - radius);
  const auto first = static_cast<std::size_t>(lo / bin_width_);
  const auto last = std::min(bins_.size() - 1, static_cast<std::size_t>((rho + radius) / bin_width_));
  // D(z, radius) is the Euclidean disk with center z(1-t^2)/(1-t^2|z|^2) and
  // radius t(1-|z|^2)/(1-t^2|z|^2), t = tanh(radius).
  double center_angle = 0.0;
  double half_width = std::numbers::pi;
  if (n_ == 1 && rz > 0.0) {
    const double t = std::tanh(radius);
    const double den = 1.0 - t * t * rz * rz;
    const double c = rz * (1.0 - t * t) / den;
    const double R = t * (1.0 - rz * rz) / den;
    if (c > R) half_width = std::asin(std::min(1.0, R / c)) + 1e-12;
    center_angle = wrap_angle(std::arg(z[0]));
  }
  for (std::size_t bi = first; bi <= last; ++bi) {
    const auto& b = bins_[bi];
    auto check = [&](const Entry& e) {
      const double d = bergman_distance(z, points_[e.index]);
      if (d < radius) visit(e.index, d);
    };
    if (n_ != 1 || half_width >= std::numbers::pi) {
      for (const auto& e : b) check(e);
      continue;
    }
    auto scan = [&](double a0, double a1) {
      auto it = std::lower_bound(b.begin(), b.end(), a0, [](const Entry& e, double v) { return e.angle < v; });
      for (; it != b.end() && it->angle <= a1; ++it) check(*it);
    };
    const double a0 = center_angle - half_width;
    const double a1 = center_angle + half_width;
    if (a0 < 0.0) {
      scan(a0 + kTwoPi, kTwoPi);
      scan(0.0, a1);
    } else if (a1 >= kTwoPi) {
      scan(a0, kTwoPi);
      scan(0.0, a1 - kTwoPi);
    } else {
      scan(a0, a1);
    }
  }
}

Lattice build_lattice(double eta, double r_max, std::size_t n, int candidate_density) {
  if (!(eta > 0.0 && eta <= 1.0)) {
    std::ostringstream os;
    os << "build_lattice: eta must lie in (0,1], got " << eta;
    throw DomainError(os.str());
  }
  if (!(r_max > 0.0 && r_max < 1.0)) throw DomainError("build_lattice: r_max must lie in (0,1)");
  if (n == 0) throw DomainError("build_lattice: dimension must be at least 1");
  if (candidate_density < 1) throw DomainError("build_lattice: candidate density must be at least 1");

  Lattice lat;
  lat.n = n;
  lat.eta = eta;
  lat.r_max = r_max;
  lat.density = candidate_density;
  const double sep = 0.5 * eta;
  const double spacing = sep / candidate_density;
  const double rho_max = distance_from_origin(r_max);

  std::vector<double> radii;
  for (int k = 1; k * spacing < rho_max; ++k) radii.push_back(std::tanh(k * spacing));
  radii.push_back(r_max);

  LatticeIndex index(n, 2.0 * eta);
  auto consider = [&](const CVec& c) {
    ++lat.candidates;
    bool free = true;
    index.query(c, sep, [&](std::size_t, double) { free = false; });
    if (!free) return;
    Point p(c);
    index.insert(p);
    lat.nodes.push_back(std::move(p));
  };
  consider(CVec(n));
  for (std::size_t k = radii.size(); k-- > 0;) {
    for (const auto& c : candidate_ring(n, radii[k], spacing, k)) consider(c);
  }
  return lat;
}

LatticeCert verify_lattice(const Lattice& lat, std::size_t probe_count, std::uint64_t seed) {
  if (lat.nodes.empty()) throw DomainError("verify_lattice: empty lattice");
  const double eta = lat.eta;
  LatticeIndex index(lat.n, 2.0 * eta);
  for (const auto& z : lat.nodes) index.insert(z);

  LatticeCert cert;
  cert.probes = probe_count;
  cert.seed = seed;

  std::vector<double> nearest(lat.nodes.size(), std::numeric_limits<double>::infinity());
  parallel_for(lat.nodes.size(), [&](std::size_t j) {
    index.query(lat.nodes[j].span(), 2.0 * eta, [&](std::size_t k, double d) {
      if (k != j) nearest[j] = std::min(nearest[j], d);
    });
  });
  cert.min_separation = *std::min_element(nearest.begin(), nearest.end());
  cert.separation_ok = cert.min_separation >= 0.5 * eta;

  struct ProbeResult {
    bool covered = false;
    int quarter = 0;
    int overlap = 0;
  };
  std::vector<ProbeResult> res(probe_count);
  parallel_for(probe_count, [&](std::size_t i) {
    const CVec z = random_probe(lat.n, lat.r_max, seed, i);
    ProbeResult& r = res[i];
    index.query(z, 2.0 * eta, [&](std::size_t, double d) {
      ++r.overlap;
      if (d < eta) r.covered = true;
      if (d < 0.25 * eta) ++r.quarter;
    });
  });
  cert.covering_ok = true;
  cert.disjoint_ok = true;
  for (std::size_t i = 0; i < probe_count; ++i) {
    if (!res[i].covered && cert.covering_ok) {
      cert.covering_ok = false;
      cert.witness = Point(random_probe(lat.n, lat.r_max, seed, i));
    }
    if (res[i].quarter > 1) cert.disjoint_ok = false;
    cert.overlap_max = std::max(cert.overlap_max, res[i].overlap);
  }
  cert.verified = cert.covering_ok && cert.separation_ok && cert.disjoint_ok;
  return cert;
}

double predicted_node_count(double eta, double r_max) {
  const double area = std::numbers::pi * r_max * r_max / (1.0 - r_max * r_max);
  const double s = 0.5 * eta;
  return area / (std::numbers::pi * std::sinh(s) * std::sinh(0.5 * s));
}

double atom_exponent_bound(const SpaceParams& space) {
  space.validate();
  return static_cast<double>(space.n) * std::max(1.0, 1.0 / space.p) + (1.0 + space.alpha) / space.p;
}

double default_atom_exponent(const SpaceParams& space) { return std::ceil(atom_exponent_bound(space)) + 1.0; }

HoloFunction atom(const Point& zj, double b, const SpaceParams& space) {
  require_same_dim(zj.dim(), space.n, "atom");
  const double bound = atom_exponent_bound(space);
  if (!(b > bound)) {
    std::ostringstream os;
    os << "atom: b = " << b << " must exceed n max(1,1/p) + (1+alpha)/p = " << bound;
    throw DomainError(os.str());
  }
  const double scale =
      std::pow(zj.one_minus_norm_sq(), (space.p * b - static_cast<double>(space.n) - 1.0 - space.alpha) / space.p);
  return HoloFunction::power_kernel(zj.coords(), b) * Complex{scale, 0.0};
}

HoloFunction synthesize(std::span<const Complex> coeffs, const Lattice& lat, double b, const SpaceParams& space) {
  if (coeffs.size() != lat.nodes.size()) {
    std::ostringstream os;
    os << "synthesize: " << coeffs.size() << " coefficients for " << lat.nodes.size() << " nodes";
    throw DomainError(os.str());
  }
  HoloFunction f(space.n);
  for (std::size_t j = 0; j < coeffs.size(); ++j) {
    if (coeffs[j] != Complex{0.0, 0.0}) f += atom(lat.nodes[j], b, space) * coeffs[j];
  }
  return f;
}

double lp_norm(std::span<const Complex> coeffs, double p) {
  double s = 0.0;
  for (const auto& c : coeffs) s += std::pow(std::abs(c), p);
  return std::pow(s, 1.0 / p);
}

}  // namespace bergman
