// Bergman norms, the derivative norm, Bloch-type seminorms and the
// criterion functionals of the boundedness theorem, all on truncated balls.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bergman/holo.hpp"
#include "bergman/params.hpp"
#include "bergman/quadrature.hpp"

namespace bergman {

enum class Trend { Stable, Divergent, Inconclusive };
const char* to_string(Trend t);

/// Diagnosis of truncated values along an increasing r_max schedule:
/// Divergent when last > growth_factor * first, Stable when the last relative
/// change is at most stable_tolerance, Inconclusive otherwise.
struct TrendRule {
  double growth_factor = 10.0;
  double stable_tolerance = 0.1;
};
Trend diagnose(std::span<const double> values, const TrendRule& rule = {});

inline const std::vector<double>& default_rmax_schedule() {
  static const std::vector<double> s{0.9, 0.99, 0.999};
  return s;
}

struct NormOptions {
  bool check_divergence = false;
  std::vector<double> schedule = default_rmax_schedule();
  TrendRule rule;
};

struct NormResult {
  double value = 0.0;
  double std_error = 0.0;  // propagated Monte Carlo error (n >= 2)
  std::size_t evaluations = 0;
  bool divergent = false;
  Trend trend = Trend::Stable;
  std::vector<double> schedule;         // filled when divergence is checked
  std::vector<double> schedule_values;  // p-th powers of the norm along the schedule
};

/// (int |f|^p dv_alpha)^(1/p) on |z| <= spec.r_max (extrapolated when spec.richardson).
NormResult bergman_norm(const RayFunction& f, const SpaceParams& space, const QuadratureSpec& spec,
                        const NormOptions& opts = {});
NormResult bergman_norm(const HoloFunction& f, const SpaceParams& space, const QuadratureSpec& spec,
                        const NormOptions& opts = {});

/// |f(0)| + (int |Rf|^p (1-|z|^2)^(p+alpha) dv)^(1/p).
NormResult equivalent_norm(const HoloFunction& f, const SpaceParams& space, const QuadratureSpec& spec,
                           const NormOptions& opts = {});

/// 1 - (n+1+alpha)/p + (n+1+beta)/q.
double gamma_exponent(const PairParams& pair);
/// Weight exponent 1 - alpha/p + beta/q and outer power pq/(p-q) of the p > q criterion.
double criterion_weight_exponent(const PairParams& pair);
double criterion_power(const PairParams& pair);
/// The exponent regime in which only constant symbols satisfy the criteria.
bool constancy_regime(const PairParams& pair);

struct SupGrid {
  int radial = 512;          // n = 1
  int angular = 512;         // n = 1
  int shells = 64;           // n >= 2
  int sphere_points = 4096;  // n >= 2
  std::uint64_t seed = 7;
  bool refine = true;
};

struct SupResult {
  double value = 0.0;
  Point argmax;
  std::size_t evaluations = 0;
};

/// sup of |Rg(z)| (1-|z|^2)^gamma over |z| <= r_max: grid plus local pattern search.
SupResult bloch_seminorm(const HoloFunction& g, double gamma, double r_max, const SupGrid& grid = {});

/// Same functional of a precomputed Rg restricted to the shell r_lo <= |z| <= r_hi.
SupResult shell_sup(const HoloFunction& rg, double gamma, double r_lo, double r_hi, int radial,
                    const SupGrid& grid = {});

struct ScheduleResult {
  std::vector<double> r_max;
  std::vector<double> values;
  Trend trend = Trend::Stable;
  double last() const { return values.empty() ? 0.0 : values.back(); }
};

/// int (|Rg| (1-|z|^2)^(1-alpha/p+beta/q))^(pq/(p-q)) dv along the schedule; requires p > q.
ScheduleResult criterion_integral(const HoloFunction& g, const PairParams& pair, const QuadratureSpec& spec,
                                  std::span<const double> schedule = default_rmax_schedule(),
                                  const TrendRule& rule = {});

/// bloch_seminorm along the schedule with the trend diagnosis.
ScheduleResult seminorm_schedule(const HoloFunction& g, double gamma,
                                 std::span<const double> schedule = default_rmax_schedule(),
                                 const SupGrid& grid = {}, const TrendRule& rule = {});

/// Shell boundaries 1 - 10^(-1 - k/4), k = 0..8 (0.9 to 0.999).
std::vector<double> default_shells();

struct DecayRule {
  double absolute = 1e-2;
  double relative = 0.1;
};

/// True when the last value is at most max(absolute, relative * max(values)).
bool decays(std::span<const double> values, const DecayRule& rule = {});

struct DecayProfile {
  std::vector<double> radii;  // inner radius of each shell
  std::vector<double> sups;
  double slope = 0.0;         // least-squares slope of log sup against log(1 - r)
  bool vanishing = false;
};

DecayProfile decay_profile(const HoloFunction& g, double gamma, std::span<const double> shells,
                           const SupGrid& grid = {}, const DecayRule& rule = {});

struct GrowthResult {
  double max_ratio = 0.0;
  std::vector<double> ratios;
};

/// max over the sample of |f(z)| (1-|z|^2)^((n+1+alpha)/p) / (int_{D(z,r)} |f|^p dv_alpha)^(1/p).
GrowthResult growth_check(const HoloFunction& f, const SpaceParams& space, double r, std::span<const Point> sample,
                          const QuadratureSpec& spec = {});

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace bergman
