#include "bergman/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "bergman/gauss.hpp"
#include "bergman/parallel.hpp"

namespace bergman {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kMcRadiiPerDirection = 16;
constexpr std::size_t kMaxFocusAngles = 8;

void check_finite(double v) {
  if (!std::isfinite(v)) throw DomainError("integrate_weighted: integrand produced a non-finite sample");
}

double weight_factor(double r, double one_minus, double alpha) {
  if (alpha == 0.0) return 1.0;
  return std::pow(one_minus * (1.0 + r), alpha);
}

// Tabulated radial density r^(2n-1) (1-r^2)^alpha on [0, r_max], sampled as
// piecewise uniform with exact importance weights.
class RadialSampler {
 public:
  RadialSampler(std::size_t n, double alpha, double r_max) : n_(n), alpha_(alpha) {
    constexpr int kCells = 2048;
    const double h = 1.0 - r_max;
    std::vector<std::pair<double, double>> edges;  // (r, 1-r)
    for (int i = 0; i <= kCells; ++i) {
      const double t = static_cast<double>(i) / kCells;
      edges.emplace_back(r_max * t, 1.0 - r_max * t);
      const double om = std::pow(h, t);
      edges.emplace_back(1.0 - om, om);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end(),
                            [](const auto& a, const auto& b) { return b.first - a.first < 1e-300; }),
                edges.end());
    edges.front() = {0.0, 1.0};
    edges.back() = {r_max, h};
    const auto rule = gauss_legendre(8);
    for (std::size_t c = 0; c + 1 < edges.size(); ++c) {
      const double a = edges[c].first;
      const double b = edges[c + 1].first;
      if (!(b > a)) continue;
      const double half = 0.5 * (b - a);
      double mass = 0.0;
      for (int i = 0; i < rule->order; ++i) {
        const double x = rule->nodes[i];
        const double r = a + half * (1.0 + x);
        const double om = edges[c + 1].second + half * (1.0 - x);
        mass += rule->weights[i] * density(r, om);
      }
      mass *= half;
      cells_.push_back({a, edges[c].second, b - a, mass});
    }
    cdf_.resize(cells_.size() + 1, 0.0);
    for (std::size_t c = 0; c < cells_.size(); ++c) cdf_[c + 1] = cdf_[c] + cells_[c].mass;
    total_ = cdf_.back();
  }

  double total() const { return total_; }

  // Radius for u in [0,1), its 1-r and the importance weight rho(r)/q(r).
  void sample(double u, double& r, double& om, double& weight) const {
    const double target = u * total_;
    auto it = std::upper_bound(cdf_.begin(), cdf_.end(), target);
    std::size_t c = static_cast<std::size_t>(std::max<std::ptrdiff_t>(0, it - cdf_.begin() - 1));
    c = std::min(c, cells_.size() - 1);
    while (cells_[c].mass <= 0.0 && c + 1 < cells_.size()) ++c;
    const Cell& cell = cells_[c];
    double frac = (target - cdf_[c]) / cell.mass;
    frac = std::clamp(frac, 0.0, 1.0);
    r = cell.a + frac * cell.width;
    om = cell.one_minus_a - frac * cell.width;
    // q(r) = mass / (total * width)
    weight = density(r, om) * cell.width * total_ / cell.mass;
  }

 private:
  struct Cell {
    double a, one_minus_a, width, mass;
  };

  double density(double r, double om) const {
    return std::pow(r, static_cast<double>(2 * n_ - 1)) * weight_factor(r, om, alpha_);
  }

  std::size_t n_;
  double alpha_;
  std::vector<Cell> cells_;
  std::vector<double> cdf_;
  double total_ = 0.0;
};

Estimate polar_disk(const RayIntegrand& F, double alpha, const QuadratureSpec& spec, std::span<const CVec> focus) {
  const RadialRule radial = graded_radial_rule(spec.r_max, spec.radial_nodes);
  std::vector<double> rw(radial.radii.size());
  for (std::size_t i = 0; i < rw.size(); ++i) {
    rw[i] = radial.weights[i] * radial.radii[i] * weight_factor(radial.radii[i], radial.one_minus[i], alpha);
  }
  std::vector<double> focus_angles;
  for (const auto& d : focus) focus_angles.push_back(std::arg(d[0]));
  const AngularRule ang = angular_rule(spec, focus_angles);
  std::vector<double> per_ray(ang.theta.size());
  const RadialSamples samples = radial.samples();
  parallel_for(ang.theta.size(), [&](std::size_t k) {
    const CVec dir{std::polar(1.0, ang.theta[k])};
    std::vector<double> vals(radial.radii.size());
    F(dir, samples, vals);
    std::vector<double> terms(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) {
      check_finite(vals[i]);
      terms[i] = rw[i] * vals[i];
    }
    per_ray[k] = ang.weights[k] * pairwise_sum(terms);
  });
  return {pairwise_sum(per_ray), 0.0, per_ray.size() * radial.radii.size()};
}

Estimate monte_carlo_ball(const RayIntegrand& F, std::size_t n, double alpha, const QuadratureSpec& spec) {
  const RadialSampler sampler(n, alpha, spec.r_max);
  const std::size_t K = kMcRadiiPerDirection;
  const std::size_t D = std::max<std::size_t>(2, static_cast<std::size_t>(spec.mc_samples) / K);
  const double scale = sphere_area(n);
  std::vector<double> means(D);
  parallel_for(D, [&](std::size_t d) {
    const CVec dir = sphere_direction(n, spec.seed, d);
    std::mt19937_64 rng(mix_seed(spec.seed ^ 0x5bd1e995ULL, d));
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> radii(K), om(K), w(K), vals(K);
    for (std::size_t k = 0; k < K; ++k) {
      const double u = (static_cast<double>(k) + uni(rng)) / static_cast<double>(K);
      sampler.sample(u, radii[k], om[k], w[k]);
    }
    // Strata are increasing in u, hence radii are ascending.
    F(dir, RadialSamples{radii, om, {}, nullptr}, vals);
    double s = 0.0;
    for (std::size_t k = 0; k < K; ++k) {
      check_finite(vals[k]);
      s += w[k] * vals[k];
    }
    means[d] = s / static_cast<double>(K);
  });
  const double mean = pairwise_sum(means) / static_cast<double>(D);
  std::vector<double> dev(D);
  for (std::size_t d = 0; d < D; ++d) dev[d] = (means[d] - mean) * (means[d] - mean);
  const double var = pairwise_sum(dev) / static_cast<double>(D - 1);
  return {scale * mean, scale * std::sqrt(var / static_cast<double>(D)), D * K};
}

Estimate truncated(const RayIntegrand& F, std::size_t n, double alpha, const QuadratureSpec& spec,
                   std::span<const CVec> focus) {
  return n == 1 ? polar_disk(F, alpha, spec, focus) : monte_carlo_ball(F, n, alpha, spec);
}

}  // namespace

void QuadratureSpec::validate() const {
  std::ostringstream os;
  if (!(r_max > 0.0 && r_max < 1.0)) {
    os << "quadrature: r_max must lie in (0,1), got " << r_max;
  } else if (radial_nodes < 8 || radial_nodes > 128) {
    os << "quadrature: radial_nodes must lie in [8,128], got " << radial_nodes;
  } else if (angular_nodes < 8) {
    os << "quadrature: angular_nodes must be >= 8, got " << angular_nodes;
  } else if (mc_samples < 8) {
    os << "quadrature: mc_samples must be >= 8, got " << mc_samples;
  } else {
    return;
  }
  throw DomainError(os.str());
}

QuadratureSpec QuadratureSpec::refined() const {
  QuadratureSpec s = *this;
  s.radial_nodes = std::min(128, 2 * radial_nodes);
  s.angular_nodes = 2 * angular_nodes;
  s.mc_samples = 4 * mc_samples;
  return s;
}

QuadratureSpec QuadratureSpec::with_r_max(double r) const {
  QuadratureSpec s = *this;
  s.r_max = r;
  return s;
}

double sphere_area(std::size_t n) {
  return 2.0 * std::pow(std::numbers::pi, static_cast<double>(n)) / std::tgamma(static_cast<double>(n));
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t index) {
  // splitmix64 finalizer
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

CVec sphere_direction(std::size_t n, std::uint64_t seed, std::uint64_t index) {
  std::mt19937_64 rng(mix_seed(seed, index));
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVec d(n);
  double s = 0.0;
  do {
    s = 0.0;
    for (auto& c : d) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      c = {re, im};
      s += re * re + im * im;
    }
  } while (s < 1e-20);
  const double inv = 1.0 / std::sqrt(s);
  for (auto& c : d) c *= inv;
  return d;
}

AngularRule angular_rule(const QuadratureSpec& spec, std::span<const double> focus_angles) {
  AngularRule out;
  // Many scattered foci (atomic sums) gain nothing from grading; use the uniform rule.
  if (focus_angles.empty() || focus_angles.size() > kMaxFocusAngles) {
    const int m = spec.angular_nodes;
    for (int k = 0; k < m; ++k) {
      out.theta.push_back(kTwoPi * k / m);
      out.weights.push_back(kTwoPi / m);
    }
    return out;
  }
  const double coarse = std::numbers::pi / 8.0;
  const double finest = std::max(0.5 * (1.0 - spec.r_max), 1e-13);
  auto wrap = [](double t) {
    t = std::fmod(t, kTwoPi);
    return t < 0.0 ? t + kTwoPi : t;
  };
  std::vector<double> breaks;
  for (int k = 0; k < 16; ++k) breaks.push_back(k * coarse);
  for (double f : focus_angles) {
    breaks.push_back(wrap(f));
    for (double d = coarse; d >= finest; d *= 0.5) {
      breaks.push_back(wrap(f + d));
      breaks.push_back(wrap(f - d));
    }
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> uniq;
  for (double b : breaks) {
    if (uniq.empty() || b - uniq.back() > 1e-15) uniq.push_back(b);
  }
  if (kTwoPi - uniq.back() + uniq.front() <= 1e-15) uniq.pop_back();
  const auto rule = gauss_legendre(spec.angular_panel_order());
  for (std::size_t k = 0; k < uniq.size(); ++k) {
    const double a = uniq[k];
    const double b = k + 1 < uniq.size() ? uniq[k + 1] : uniq.front() + kTwoPi;
    const int pieces = std::max(1, static_cast<int>(std::ceil((b - a) / coarse - 1e-12)));
    const double width = (b - a) / pieces;
    for (int p = 0; p < pieces; ++p) {
      const double lo = a + p * width;
      const double half = 0.5 * width;
      for (int i = 0; i < rule->order; ++i) {
        out.theta.push_back(lo + half * (1.0 + rule->nodes[i]));
        out.weights.push_back(half * rule->weights[i]);
      }
    }
  }
  return out;
}

Estimate integrate_weighted(const RayIntegrand& F, std::size_t n, double alpha, const QuadratureSpec& spec,
                            std::span<const CVec> focus) {
  spec.validate();
  if (n == 0) throw DomainError("integrate_weighted: dimension must be at least 1");
  if (!(alpha > -1.0)) throw DomainError("integrate_weighted: alpha must exceed -1");
  const Estimate fine = truncated(F, n, alpha, spec, focus);
  if (!spec.richardson) return fine;
  const double coarse_r = 1.0 - 2.0 * (1.0 - spec.r_max);
  if (!(coarse_r > 0.0)) return fine;
  const Estimate coarse = truncated(F, n, alpha, spec.with_r_max(coarse_r), focus);
  const double c = std::pow(2.0, alpha + 1.0) - 1.0;
  Estimate out;
  out.value = fine.value + (fine.value - coarse.value) / c;
  out.std_error = fine.std_error * (1.0 + 1.0 / c) + coarse.std_error / c;
  out.evaluations = fine.evaluations + coarse.evaluations;
  return out;
}

Estimate integrate_weighted(const PointIntegrand& F, std::size_t n, double alpha, const QuadratureSpec& spec) {
  RayIntegrand ray = [&F](std::span<const Complex> dir, const RadialSamples& s, std::span<double> out) {
    CVec z(dir.size());
    for (std::size_t i = 0; i < s.radii.size(); ++i) {
      for (std::size_t k = 0; k < z.size(); ++k) z[k] = s.radii[i] * dir[k];
      out[i] = F(z);
    }
  };
  return integrate_weighted(ray, n, alpha, spec);
}

Estimate integrate_metric_ball(const PointIntegrand& F, const MetricBall& ball, double alpha,
                               const QuadratureSpec& spec) {
  spec.validate();
  const std::size_t n = ball.center.dim();
  const double t = ball.euclidean_radius_at_origin();
  const Point& w = ball.center;
  const double w_defect = w.one_minus_norm_sq();
  auto pulled_back = [&](const CVec& u) {
    const Point x = moebius(w, Point(u));
    const Complex om = 1.0 - inner(std::span<const Complex>(u), w.span());
    const double defect = w_defect * one_minus_norm_sq(u) / std::norm(om);
    const double weight = alpha == 0.0 ? 1.0 : std::pow(defect, alpha);
    return F(x.span()) * weight * moebius_jacobian(w, u);
  };
  if (n == 1) {
    const auto radial = gauss_legendre(std::max(32, 2 * spec.radial_nodes));
    const int m = std::max(64, spec.angular_nodes / 2);
    std::vector<double> per_ray(static_cast<std::size_t>(m));
    parallel_for(per_ray.size(), [&](std::size_t k) {
      const Complex dir = std::polar(1.0, kTwoPi * static_cast<double>(k) / m);
      std::vector<double> terms(static_cast<std::size_t>(radial->order));
      for (int i = 0; i < radial->order; ++i) {
        const double r = 0.5 * t * (1.0 + radial->nodes[i]);
        const double v = pulled_back(CVec{r * dir});
        check_finite(v);
        terms[i] = 0.5 * t * radial->weights[i] * r * v;
      }
      per_ray[k] = (kTwoPi / m) * pairwise_sum(terms);
    });
    return {pairwise_sum(per_ray), 0.0, per_ray.size() * static_cast<std::size_t>(radial->order)};
  }
  const std::size_t N = static_cast<std::size_t>(spec.mc_samples);
  std::vector<double> vals(N);
  parallel_for(N, [&](std::size_t i) {
    CVec u = sphere_direction(n, spec.seed, i);
    std::mt19937_64 rng(mix_seed(spec.seed ^ 0x27d4eb2fULL, i));
    const double s = (static_cast<double>(i) + std::uniform_real_distribution<double>(0.0, 1.0)(rng)) / N;
    const double r = t * std::pow(s, 1.0 / (2.0 * n));
    for (auto& c : u) c *= r;
    vals[i] = pulled_back(u);
    check_finite(vals[i]);
  });
  const double vol = std::pow(std::numbers::pi, static_cast<double>(n)) / std::tgamma(n + 1.0) *
                     std::pow(t, 2.0 * static_cast<double>(n));
  const double mean = pairwise_sum(vals) / static_cast<double>(N);
  std::vector<double> dev(N);
  for (std::size_t i = 0; i < N; ++i) dev[i] = (vals[i] - mean) * (vals[i] - mean);
  const double var = pairwise_sum(dev) / static_cast<double>(N - 1);
  return {vol * mean, vol * std::sqrt(var / static_cast<double>(N)), N};
}

double metric_ball_volume(const MetricBall& ball, double alpha, const QuadratureSpec& spec) {
  return integrate_metric_ball([](std::span<const Complex>) { return 1.0; }, ball, alpha, spec).value;
}

}  // namespace bergman
