#include "bergman/harness.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "bergman/parallel.hpp"

namespace bergman {

namespace {

bool zero_derivative(const HoloFunction& rg) { return rg.is_polynomial() && rg.polynomial_part().is_zero(); }

void require_increasing(std::span<const double> xs, const char* what) {
  if (xs.size() < 2) throw DomainError(std::string(what) + ": at least two values required");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!(xs[i] > 0.0 && xs[i] < 1.0)) throw DomainError(std::string(what) + ": values must lie in (0,1)");
    if (i > 0 && !(xs[i] > xs[i - 1])) throw DomainError(std::string(what) + ": values must be increasing");
  }
}

}  // namespace

const char* to_string(Branch b) { return b == Branch::PGreaterThanQ ? "P_GT_Q" : "P_LE_Q"; }

const char* to_string(Classification c) {
  switch (c) {
    case Classification::Compact:
      return "COMPACT";
    case Classification::Bounded:
      return "BOUNDED";
    case Classification::Unbounded:
      return "UNBOUNDED";
    case Classification::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

std::vector<double> default_w_gaps() {
  std::vector<double> g;
  for (int k = 2; k <= 8; ++k) g.push_back(std::pow(10.0, -k / 2.0));
  return g;
}

HarnessConfig::HarnessConfig() {
  probe_spec.r_max = 1.0 - 1e-7;
  probe_spec.richardson = true;
}

void HarnessConfig::validate() const {
  spec.validate();
  probe_spec.validate();
  require_increasing(schedule, "schedule");
  require_increasing(shells, "shells");
  for (double g : w_gaps) {
    if (!(g > 0.0 && g < 1.0)) throw DomainError("w_gaps: values must lie in (0,1)");
  }
  for (std::size_t k = 1; k < w_gaps.size(); ++k) {
    if (!(w_gaps[k] < w_gaps[k - 1])) throw DomainError("w_gaps: values must be decreasing");
  }
  if (!(trend.growth_factor > 1.0)) throw DomainError("trend: growth factor must exceed 1");
  if (!(probe_growth > 1.0)) throw DomainError("probe_growth must exceed 1");
}

bool Verdict::criterion_vanishing() const {
  if (branch == Branch::PGreaterThanQ) return criterion.trend == Trend::Stable;
  return criterion_finite() && decay.has_value() && decay->vanishing;
}

Verdict classify(const HoloFunction& g, const PairParams& pair, const HarnessConfig& config) {
  pair.validate();
  config.validate();
  require_same_dim(g.dim(), pair.n(), "classify");
  Verdict v;
  v.branch = pair.p_greater_than_q() ? Branch::PGreaterThanQ : Branch::PAtMostQ;
  v.gamma = gamma_exponent(pair);
  v.constant_symbol = zero_derivative(g.radial_derivative());
  v.constancy_flag = constancy_regime(pair) && !v.constant_symbol;

  if (v.branch == Branch::PGreaterThanQ) {
    v.criterion = criterion_integral(g, pair, config.spec, config.schedule, config.trend);
    switch (v.criterion.trend) {
      case Trend::Stable:
        v.classification = Classification::Compact;
        break;
      case Trend::Divergent:
        v.classification = Classification::Unbounded;
        break;
      case Trend::Inconclusive:
        v.classification = Classification::Inconclusive;
        break;
    }
    return v;
  }

  for (double r : config.schedule) {
    SupResult s = bloch_seminorm(g, v.gamma, r, config.grid);
    v.criterion.r_max.push_back(r);
    v.criterion.values.push_back(s.value);
    v.seminorm = std::move(s);
  }
  v.criterion.trend = diagnose(v.criterion.values, config.trend);
  v.decay = decay_profile(g, v.gamma, config.shells, config.grid, config.decay);
  switch (v.criterion.trend) {
    case Trend::Stable:
      v.classification = v.decay->vanishing ? Classification::Compact : Classification::Bounded;
      break;
    case Trend::Divergent:
      v.classification = Classification::Unbounded;
      break;
    case Trend::Inconclusive:
      v.classification = Classification::Inconclusive;
      break;
  }
  return v;
}

CVec worst_direction(const HoloFunction& g, const SupGrid& grid) {
  const std::size_t n = g.dim();
  const HoloFunction rg = g.radial_derivative();
  std::vector<CVec> dirs;
  if (n == 1) {
    for (int k = 0; k < grid.angular; ++k) dirs.push_back(CVec{std::polar(1.0, 2.0 * std::numbers::pi * k / grid.angular)});
  } else {
    for (std::size_t k = 0; k < n; ++k) dirs.push_back(BoundaryDirection::axis(n, k).coords());
    dirs.push_back(BoundaryDirection::diagonal(n).coords());
    for (int k = 0; k < grid.sphere_points; ++k) dirs.push_back(sphere_direction(n, grid.seed, k));
  }
  for (auto& d : rg.singular_directions()) dirs.push_back(std::move(d));
  if (zero_derivative(rg)) return dirs.front();
  const double r = 0.999;
  const double om = 1.0 - r;
  std::vector<double> vals(dirs.size());
  parallel_for(dirs.size(), [&](std::size_t k) {
    Complex v;
    rg.eval_ray(dirs[k], std::span<const double>(&r, 1), std::span<const double>(&om, 1), std::span<Complex>(&v, 1));
    vals[k] = std::abs(v);
  });
  std::size_t best = 0;
  for (std::size_t k = 1; k < vals.size(); ++k) {
    if (vals[k] > vals[best] * (1.0 + 1e-12)) best = k;
  }
  return dirs[best];
}

std::vector<Point> w_schedule(std::span<const Complex> dir, std::span<const double> gaps) {
  std::vector<Point> out;
  for (double gap : gaps) out.push_back(Point::along(dir, 1.0 - gap));
  return out;
}

ProbeProfile probe_kernels(const HoloFunction& g, const PairParams& pair, std::span<const Point> w_grid,
                           const HarnessConfig& config) {
  pair.validate();
  config.validate();
  require_same_dim(g.dim(), pair.n(), "probe_kernels");
  ProbeProfile out;
  out.uses_kp = pair.p() <= 1.0;
  out.m = config.kernel_power.value_or(default_kernel_power(pair.source));
  for (const Point& w : w_grid) {
    require_same_dim(w.dim(), pair.n(), "probe_kernels");
    const HoloFunction K = out.uses_kp ? kernel_Kp(w, pair.source, out.m) : kernel_K(w, pair.source);
    ProbePoint pt{w};
    pt.kernel_norm = bergman_norm(K, pair.source, config.probe_spec).value;
    const TgEvaluator T(K, g);
    pt.tg_norm = bergman_norm(T, pair.target, config.probe_spec).value;
    pt.normalized = pt.tg_norm / pt.kernel_norm;
    out.points.push_back(std::move(pt));
  }
  double run = 0.0;
  std::vector<double> values;
  for (const auto& pt : out.points) {
    run = std::max(run, pt.normalized);
    out.lower_bounds.push_back(run);
    values.push_back(pt.normalized);
  }
  if (!values.empty()) {
    const double first = values.front();
    out.growth = run == 0.0 ? 1.0 : (first > 0.0 ? run / first : std::numeric_limits<double>::infinity());
  }
  out.bounded = out.growth < config.probe_growth;
  out.decaying = decays(values, config.decay);
  return out;
}

std::vector<LowerBound> empirical_lower_bound(const HoloFunction& g, const PairParams& pair,
                                              std::span<const Point> w_grid, const HarnessConfig& config) {
  const ProbeProfile prof = probe_kernels(g, pair, w_grid, config);
  std::vector<LowerBound> out;
  for (std::size_t i = 0; i < prof.points.size(); ++i) out.push_back({prof.points[i].w, prof.lower_bounds[i]});
  return out;
}

ProbeProfile compactness_probe(const HoloFunction& g, const PairParams& pair, std::span<const Point> w_schedule,
                               const HarnessConfig& config) {
  return probe_kernels(g, pair, w_schedule, config);
}

KernelAsymptotic kernel_norm_asymptotic(const SpaceParams& space, std::span<const Point> w_schedule,
                                        std::optional<int> m, const QuadratureSpec& spec) {
  space.validate();
  if (w_schedule.size() < 3) throw DomainError("kernel_norm_asymptotic: at least three schedule points required");
  KernelAsymptotic out;
  const double c = space.critical();
  out.expected = m ? (c - *m) / space.p : -c * (space.p - 1.0) / space.p;
  for (const Point& w : w_schedule) {
    const HoloFunction K = m ? kernel_Kp(w, space, *m) : kernel_K(w, space);
    out.log_defect.push_back(std::log(w.one_minus_norm_sq()));
    out.log_norm.push_back(std::log(bergman_norm(K, space, spec).value));
  }
  out.slope = fit_slope(out.log_defect, out.log_norm);
  return out;
}

PointwiseCheck pointwise_lower_bound_check(const HoloFunction& g, const PairParams& pair,
                                           std::span<const Point> w_grid, const HarnessConfig& config,
                                           std::optional<int> m) {
  pair.validate();
  config.validate();
  PointwiseCheck out;
  const double q = pair.q();
  const double n1 = static_cast<double>(pair.n()) + 1.0;
  const bool uses_kp = pair.p() <= 1.0;
  const int mm = m.value_or(config.kernel_power.value_or(default_kernel_power(pair.source)));
  out.exponent = uses_kp ? q + n1 + pair.beta() - mm * q / pair.p()
                         : q + (1.0 - q) * (n1 + pair.alpha()) + pair.beta() - pair.alpha();
  const HoloFunction rg = g.radial_derivative();
  for (const Point& w : w_grid) {
    const double rgw = std::abs(rg(w));
    if (!(rgw > 1e-300)) {
      ++out.skipped;
      continue;
    }
    const HoloFunction K = uses_kp ? kernel_Kp(w, pair.source, mm) : kernel_K(w, pair.source);
    const double tn = bergman_norm(TgEvaluator(K, g), pair.target, config.probe_spec).value;
    const double ratio = std::pow(tn, q) / (std::pow(w.one_minus_norm_sq(), out.exponent) * std::pow(rgw, q));
    out.ratios.push_back(ratio);
  }
  out.empty = out.ratios.empty();
  if (!out.empty) {
    out.min_ratio = *std::min_element(out.ratios.begin(), out.ratios.end());
    out.max_ratio = *std::max_element(out.ratios.begin(), out.ratios.end());
    out.violated = out.min_ratio < 1e-12;
  }
  return out;
}

double bloch_pair_upper_bound(const HoloFunction& g, double r_max, const SupGrid& grid) {
  if (g.dim() != 1) throw DomainError("bloch_pair_upper_bound: only n = 1 is supported");
  const HoloFunction rg = g.radial_derivative();
  if (zero_derivative(rg)) return 0.0;
  const double r_min = 1e-4;
  std::vector<double> radii(static_cast<std::size_t>(grid.radial)), om(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    om[i] = (1.0 - r_min) * std::pow((1.0 - r_max) / (1.0 - r_min), static_cast<double>(i) / (radii.size() - 1));
    radii[i] = 1.0 - om[i];
  }
  std::vector<double> thetas;
  for (int k = 0; k < grid.angular; ++k) thetas.push_back(2.0 * std::numbers::pi * k / grid.angular);
  for (const auto& d : rg.singular_directions()) thetas.push_back(std::arg(d[0]));
  std::vector<double> best(thetas.size(), 0.0);
  parallel_for(thetas.size(), [&](std::size_t k) {
    CVec vals(radii.size());
    rg.eval_ray(CVec{std::polar(1.0, thetas[k])}, radii, om, vals);
    // |g'(z)| (1-|z|^2) = |Rg(z)| (1-|z|^2) / |z| for n = 1.
    for (std::size_t i = 0; i < radii.size(); ++i) {
      best[k] = std::max(best[k], std::abs(vals[i]) * om[i] * (1.0 + radii[i]) / radii[i]);
    }
  });
  return std::sqrt(1.5) * *std::max_element(best.begin(), best.end());
}

ConsistencyReport consistency_report(const HoloFunction& g, const PairParams& pair, const HarnessConfig& config) {
  ConsistencyReport rep;
  rep.verdict = classify(g, pair, config);
  rep.directions.push_back(worst_direction(g, config.grid));
  if (!g.log_terms().empty() && pair.n() > 1) {
    CVec diag = BoundaryDirection::diagonal(pair.n()).coords();
    double diff = 0.0;
    for (std::size_t k = 0; k < diag.size(); ++k) diff += std::norm(diag[k] - rep.directions[0][k]);
    if (diff > 1e-20) rep.directions.push_back(std::move(diag));
  }
  for (const auto& d : rep.directions) {
    const auto ws = w_schedule(d, config.w_gaps);
    rep.probes.push_back(probe_kernels(g, pair, ws, config));
    rep.probes_bounded = rep.probes_bounded && rep.probes.back().bounded;
    rep.probes_decaying = rep.probes_decaying && rep.probes.back().decaying;
  }
  rep.consistent = rep.verdict.criterion_finite() == rep.probes_bounded &&
                   rep.verdict.criterion_vanishing() == rep.probes_decaying;
  rep.classification = rep.verdict.classification;
  if (rep.classification == Classification::Compact && !rep.probes_decaying) {
    rep.classification = Classification::Bounded;
  }
  return rep;
}

}  // namespace bergman
