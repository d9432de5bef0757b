#include "bergman/norms.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "bergman/parallel.hpp"

namespace bergman {

namespace {

double abs_pow(Complex v, double p) {
  if (p == 2.0) return std::norm(v);
  if (p == 1.0) return std::abs(v);
  return std::pow(std::abs(v), p);
}

RayIntegrand power_integrand(const RayFunction& f, double p) {
  return [&f, p](std::span<const Complex> dir, const RadialSamples& s, std::span<double> out) {
    CVec vals(s.radii.size());
    f.eval_ray(dir, s, vals);
    for (std::size_t i = 0; i < vals.size(); ++i) out[i] = abs_pow(vals[i], p);
  };
}

NormResult norm_from_integrand(const RayIntegrand& F, std::size_t n, double p, double weight,
                               const QuadratureSpec& spec, std::span<const CVec> focus, const NormOptions& opts) {
  const Estimate e = integrate_weighted(F, n, weight, spec, focus);
  NormResult out;
  const double I = std::max(e.value, 0.0);
  out.value = std::pow(I, 1.0 / p);
  out.std_error = I > 0.0 ? out.value / (p * I) * e.std_error : 0.0;
  out.evaluations = e.evaluations;
  if (opts.check_divergence) {
    QuadratureSpec plain = spec;
    plain.richardson = false;
    for (double r : opts.schedule) {
      const Estimate s = integrate_weighted(F, n, weight, plain.with_r_max(r), focus);
      out.schedule.push_back(r);
      out.schedule_values.push_back(s.value);
      out.evaluations += s.evaluations;
    }
    out.trend = diagnose(out.schedule_values, opts.rule);
    out.divergent = out.trend == Trend::Divergent;
  }
  return out;
}

double weighted_value(const HoloFunction& rg, double gamma, std::span<const Complex> dir, double om) {
  const double r = 1.0 - om;
  Complex v;
  rg.eval_ray(dir, std::span<const double>(&r, 1), std::span<const double>(&om, 1), std::span<Complex>(&v, 1));
  const double a = std::abs(v);
  if (a == 0.0) return 0.0;
  return a * std::pow(om * (1.0 + r), gamma);
}

std::vector<CVec> grid_directions(std::size_t n, const SupGrid& grid, const std::vector<CVec>& focus) {
  std::vector<CVec> dirs;
  if (n == 1) {
    for (int k = 0; k < grid.angular; ++k) {
      dirs.push_back(CVec{std::polar(1.0, 2.0 * std::numbers::pi * k / grid.angular)});
    }
  } else {
    for (std::size_t k = 0; k < n; ++k) dirs.push_back(BoundaryDirection::axis(n, k).coords());
    dirs.push_back(BoundaryDirection::diagonal(n).coords());
    for (int k = 0; k < grid.sphere_points; ++k) dirs.push_back(sphere_direction(n, grid.seed, k));
  }
  for (const auto& f : focus) dirs.push_back(f);
  return dirs;
}

}  // namespace

const char* to_string(Trend t) {
  switch (t) {
    case Trend::Stable:
      return "STABLE";
    case Trend::Divergent:
      return "DIVERGENT";
    case Trend::Inconclusive:
      return "INCONCLUSIVE";
  }
  return "?";
}

Trend diagnose(std::span<const double> values, const TrendRule& rule) {
  if (values.size() < 2) return Trend::Stable;
  const double first = values.front();
  const double last = values.back();
  if (last > rule.growth_factor * first && last > 1e-300) return Trend::Divergent;
  const double prev = values[values.size() - 2];
  const double scale = std::max(std::abs(last), std::abs(prev));
  if (scale == 0.0 || std::abs(last - prev) <= rule.stable_tolerance * scale) return Trend::Stable;
  return Trend::Inconclusive;
}

NormResult bergman_norm(const RayFunction& f, const SpaceParams& space, const QuadratureSpec& spec,
                        const NormOptions& opts) {
  space.validate();
  require_same_dim(f.dim(), space.n, "bergman_norm");
  const auto focus = f.focus_directions();
  return norm_from_integrand(power_integrand(f, space.p), space.n, space.p, space.alpha, spec, focus, opts);
}

NormResult bergman_norm(const HoloFunction& f, const SpaceParams& space, const QuadratureSpec& spec,
                        const NormOptions& opts) {
  return bergman_norm(HoloRay(f), space, spec, opts);
}

NormResult equivalent_norm(const HoloFunction& f, const SpaceParams& space, const QuadratureSpec& spec,
                           const NormOptions& opts) {
  space.validate();
  require_same_dim(f.dim(), space.n, "equivalent_norm");
  const HoloFunction rf = f.radial_derivative();
  const HoloRay ray(rf);
  NormResult out =
      norm_from_integrand(power_integrand(ray, space.p), space.n, space.p, space.p + space.alpha, spec,
                          rf.singular_directions(), opts);
  out.value += std::abs(f.eval(CVec(space.n)));
  return out;
}

double gamma_exponent(const PairParams& pair) {
  pair.validate();
  const double n1 = static_cast<double>(pair.n()) + 1.0;
  return 1.0 - (n1 + pair.alpha()) / pair.p() + (n1 + pair.beta()) / pair.q();
}

double criterion_weight_exponent(const PairParams& pair) {
  pair.validate();
  return 1.0 - pair.alpha() / pair.p() + pair.beta() / pair.q();
}

double criterion_power(const PairParams& pair) {
  pair.validate();
  if (!pair.p_greater_than_q()) throw DomainError("criterion_power: requires p > q");
  return pair.p() * pair.q() / (pair.p() - pair.q());
}

bool constancy_regime(const PairParams& pair) {
  pair.validate();
  if (pair.p_greater_than_q()) return (1.0 + pair.alpha()) / pair.p() - (1.0 + pair.beta()) / pair.q() >= 1.0;
  const double n1 = static_cast<double>(pair.n()) + 1.0;
  return (n1 + pair.alpha()) / pair.p() - (n1 + pair.beta()) / pair.q() > 1.0;
}

SupResult shell_sup(const HoloFunction& rg, double gamma, double r_lo, double r_hi, int radial,
                    const SupGrid& grid) {
  if (!(r_lo >= 0.0 && r_hi > r_lo && r_hi < 1.0)) {
    std::ostringstream os;
    os << "shell_sup: need 0 <= r_lo < r_hi < 1, got [" << r_lo << ", " << r_hi << "]";
    throw DomainError(os.str());
  }
  if (radial < 2) throw DomainError("shell_sup: at least two radii required");
  const std::size_t n = rg.dim();
  const double om_lo = 1.0 - r_lo;
  const double om_hi = 1.0 - r_hi;
  std::vector<double> om(static_cast<std::size_t>(radial)), radii(om.size());
  for (int i = 0; i < radial; ++i) {
    om[i] = om_lo * std::pow(om_hi / om_lo, static_cast<double>(i) / (radial - 1));
    radii[i] = 1.0 - om[i];
  }
  om.back() = om_hi;
  radii.back() = r_hi;

  const auto dirs = grid_directions(n, grid, rg.singular_directions());
  struct Best {
    double value = -1.0;
    std::size_t radius = 0;
  };
  std::vector<Best> best(dirs.size());
  const bool zero = rg.is_polynomial() && rg.polynomial_part().is_zero();
  if (!zero) {
    parallel_for(dirs.size(), [&](std::size_t d) {
      CVec vals(radii.size());
      rg.eval_ray(dirs[d], radii, om, vals);
      for (std::size_t i = 0; i < vals.size(); ++i) {
        const double a = std::abs(vals[i]);
        const double v = a == 0.0 ? 0.0 : a * std::pow(om[i] * (1.0 + radii[i]), gamma);
        if (v > best[d].value) best[d] = {v, i};
      }
    });
  }
  SupResult out;
  out.evaluations = dirs.size() * radii.size();
  if (zero) {
    out.argmax = Point::origin(n);
    return out;
  }
  std::size_t bd = 0;
  for (std::size_t d = 1; d < dirs.size(); ++d) {
    if (best[d].value > best[bd].value) bd = d;
  }
  double value = best[bd].value;
  double log_om = std::log(om[best[bd].radius]);
  CVec dir = dirs[bd];
  if (grid.refine && value > 0.0) {
    const double log_lo = std::log(om_hi);
    const double log_hi = std::log(om_lo);
    double dl = (log_hi - log_lo) / (radial - 1);
    double dd = n == 1 ? 2.0 * std::numbers::pi / grid.angular : 0.05;
    auto eval_at = [&](double lom, const CVec& d) {
      ++out.evaluations;
      return weighted_value(rg, gamma, d, std::exp(lom));
    };
    for (int it = 0; it < 2000 && (dl > 1e-12 || dd > 1e-12); ++it) {
      bool moved = false;
      for (int sgn : {1, -1}) {
        const double cand = std::clamp(log_om + sgn * dl, log_lo, log_hi);
        const double v = eval_at(cand, dir);
        if (v > value) {
          value = v;
          log_om = cand;
          moved = true;
        }
      }
      std::vector<CVec> moves;
      if (n == 1) {
        for (double sgn : {1.0, -1.0}) moves.push_back(CVec{dir[0] * std::polar(1.0, sgn * dd)});
      } else {
        for (std::size_t k = 0; k < n; ++k) {
          for (const Complex step : {Complex{dd, 0.0}, Complex{-dd, 0.0}, Complex{0.0, dd}, Complex{0.0, -dd}}) {
            CVec cand = dir;
            cand[k] += step;
            const double s = norm(cand);
            for (auto& c : cand) c /= s;
            moves.push_back(std::move(cand));
          }
        }
      }
      for (auto& cand : moves) {
        const double v = eval_at(log_om, cand);
        if (v > value) {
          value = v;
          dir = cand;
          moved = true;
        }
      }
      if (!moved) {
        dl *= 0.5;
        dd *= 0.5;
      }
    }
  }
  out.value = std::max(value, 0.0);
  out.argmax = Point::along(dir, 1.0 - std::exp(log_om));
  return out;
}

SupResult bloch_seminorm(const HoloFunction& g, double gamma, double r_max, const SupGrid& grid) {
  if (!(r_max > 0.0 && r_max < 1.0)) throw DomainError("bloch_seminorm: r_max must lie in (0,1)");
  const int radial = g.dim() == 1 ? grid.radial : grid.shells;
  return shell_sup(g.radial_derivative(), gamma, 0.0, r_max, radial, grid);
}

ScheduleResult criterion_integral(const HoloFunction& g, const PairParams& pair, const QuadratureSpec& spec,
                                  std::span<const double> schedule, const TrendRule& rule) {
  pair.validate();
  require_same_dim(g.dim(), pair.n(), "criterion_integral");
  if (!pair.p_greater_than_q()) {
    throw DomainError("criterion_integral: the integral criterion applies only when p > q");
  }
  const double e = criterion_weight_exponent(pair);
  const double P = criterion_power(pair);
  const HoloFunction rg = g.radial_derivative();
  const RayIntegrand F = [&](std::span<const Complex> dir, const RadialSamples& s, std::span<double> out) {
    CVec vals(s.radii.size());
    rg.eval_ray(dir, s.radii, s.one_minus, vals);
    for (std::size_t i = 0; i < vals.size(); ++i) {
      const double a = std::abs(vals[i]);
      out[i] = a == 0.0 ? 0.0 : std::pow(a * std::pow(s.one_minus[i] * (1.0 + s.radii[i]), e), P);
    }
  };
  const auto focus = rg.singular_directions();
  ScheduleResult out;
  QuadratureSpec plain = spec;
  plain.richardson = false;
  for (double r : schedule) {
    out.r_max.push_back(r);
    out.values.push_back(integrate_weighted(F, pair.n(), 0.0, plain.with_r_max(r), focus).value);
  }
  out.trend = diagnose(out.values, rule);
  return out;
}

ScheduleResult seminorm_schedule(const HoloFunction& g, double gamma, std::span<const double> schedule,
                                 const SupGrid& grid, const TrendRule& rule) {
  ScheduleResult out;
  for (double r : schedule) {
    out.r_max.push_back(r);
    out.values.push_back(bloch_seminorm(g, gamma, r, grid).value);
  }
  out.trend = diagnose(out.values, rule);
  return out;
}

std::vector<double> default_shells() {
  std::vector<double> s;
  for (int k = 0; k <= 8; ++k) s.push_back(1.0 - std::pow(10.0, -1.0 - k / 4.0));
  return s;
}

bool decays(std::span<const double> values, const DecayRule& rule) {
  if (values.empty()) return true;
  const double peak = *std::max_element(values.begin(), values.end());
  return values.back() <= std::max(rule.absolute, rule.relative * peak);
}

DecayProfile decay_profile(const HoloFunction& g, double gamma, std::span<const double> shells,
                           const SupGrid& grid, const DecayRule& rule) {
  if (shells.size() < 2) throw DomainError("decay_profile: at least two shell radii required");
  for (std::size_t k = 0; k + 1 < shells.size(); ++k) {
    if (!(shells[k] < shells[k + 1])) throw DomainError("decay_profile: shells must be increasing");
  }
  if (!(shells.front() > 0.0 && shells.back() < 1.0)) throw DomainError("decay_profile: shells must lie in (0,1)");
  const HoloFunction rg = g.radial_derivative();
  SupGrid shell_grid = grid;
  DecayProfile out;
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k + 1 < shells.size(); ++k) {
    const double v = shell_sup(rg, gamma, shells[k], shells[k + 1], 32, shell_grid).value;
    out.radii.push_back(shells[k]);
    out.sups.push_back(v);
    if (v > 0.0) {
      xs.push_back(std::log(1.0 - shells[k]));
      ys.push_back(std::log(v));
    }
  }
  out.slope = xs.size() >= 2 ? fit_slope(xs, ys) : 0.0;
  out.vanishing = decays(out.sups, rule);
  return out;
}

GrowthResult growth_check(const HoloFunction& f, const SpaceParams& space, double r, std::span<const Point> sample,
                          const QuadratureSpec& spec) {
  space.validate();
  if (!(r > 0.0)) throw DomainError("growth_check: r must be positive");
  if (sample.empty()) throw DomainError("growth_check: empty sample");
  GrowthResult out;
  const double expo = space.critical() / space.p;
  for (const Point& z : sample) {
    require_same_dim(z.dim(), space.n, "growth_check");
    const Estimate local = integrate_metric_ball(
        [&](std::span<const Complex> x) { return abs_pow(f.eval(x), space.p); }, MetricBall(z, r), space.alpha,
        spec);
    if (!(local.value > 0.0)) throw DomainError("growth_check: empty metric-ball quadrature");
    const double ratio = std::abs(f(z)) * std::pow(z.one_minus_norm_sq(), expo) / std::pow(local.value, 1.0 / space.p);
    out.ratios.push_back(ratio);
    out.max_ratio = std::max(out.max_ratio, ratio);
  }
  return out;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) throw DomainError("fit_slope: need at least two paired points");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= x.size();
  my /= y.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  if (sxx == 0.0) throw DomainError("fit_slope: degenerate abscissae");
  return sxy / sxx;
}

}  // namespace bergman
