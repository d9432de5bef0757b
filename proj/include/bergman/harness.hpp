// The boundedness/compactness theorem as an executable classifier, with
// kernel test-function probes that cross-check it.
#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bergman/holo.hpp"
#include "bergman/norms.hpp"

namespace bergman {

enum class Branch { PGreaterThanQ, PAtMostQ };
enum class Classification { Compact, Bounded, Unbounded, Inconclusive };

const char* to_string(Branch b);
const char* to_string(Classification c);

/// Gaps 1 - |w| = 10^(-k/2), k = 2..8.
std::vector<double> default_w_gaps();

struct HarnessConfig {
  QuadratureSpec spec;        // criterion integrals (r_max is taken from the schedule)
  QuadratureSpec probe_spec;  // kernel and T_g kernel norms
  std::vector<double> schedule = default_rmax_schedule();
  std::vector<double> shells = default_shells();
  std::vector<double> w_gaps = default_w_gaps();
  SupGrid grid;
  TrendRule trend;
  DecayRule decay;
  double probe_growth = 10.0;       // lower bounds "grow" past this factor
  std::optional<int> kernel_power;  // m for K_p when p <= 1

  HarnessConfig();
  void validate() const;
};

struct Verdict {
  Branch branch = Branch::PAtMostQ;
  double gamma = 0.0;
  bool constancy_flag = false;
  bool constant_symbol = false;
  ScheduleResult criterion;             // integral (p > q) or seminorm (p <= q) along the schedule
  std::optional<SupResult> seminorm;    // at the last schedule radius (p <= q)
  std::optional<DecayProfile> decay;    // p <= q
  Classification classification = Classification::Inconclusive;

  bool criterion_finite() const { return criterion.trend != Trend::Divergent; }
  bool criterion_vanishing() const;
};

Verdict classify(const HoloFunction& g, const PairParams& pair, const HarnessConfig& config = {});

/// Unit direction maximizing |Rg| on the sphere grid at radius 0.999 (first maximum wins).
CVec worst_direction(const HoloFunction& g, const SupGrid& grid = {});

/// w = (1 - gap) dir for each gap.
std::vector<Point> w_schedule(std::span<const Complex> dir, std::span<const double> gaps);

struct ProbePoint {
  Point w;
  double kernel_norm = 0.0;  // ||K(w,.)||_{A^p_alpha} (or K_p)
  double tg_norm = 0.0;      // ||T_g K(w,.)||_{A^q_beta}
  double normalized = 0.0;   // ||T_g k_p(w,.)||_{A^q_beta}
};

struct ProbeProfile {
  bool uses_kp = false;
  int m = 0;
  std::vector<ProbePoint> points;
  std::vector<double> lower_bounds;  // running maximum of the normalized values
  double growth = 1.0;               // max / first
  bool bounded = true;
  bool decaying = true;
};

/// Normalized kernel probes ||T_g k_p(w,.)||_{A^q_beta} along the w grid.
ProbeProfile probe_kernels(const HoloFunction& g, const PairParams& pair, std::span<const Point> w_grid,
                           const HarnessConfig& config = {});

struct LowerBound {
  Point w;
  double bound;
};
/// Running maximum of ||T_g k_p(w,.)|| / 1 over the grid: lower bounds for the operator norm.
std::vector<LowerBound> empirical_lower_bound(const HoloFunction& g, const PairParams& pair,
                                              std::span<const Point> w_grid, const HarnessConfig& config = {});

/// The normalized probe values along the schedule.
ProbeProfile compactness_probe(const HoloFunction& g, const PairParams& pair, std::span<const Point> w_schedule,
                               const HarnessConfig& config = {});

struct KernelAsymptotic {
  std::vector<double> log_defect;  // log(1 - |w|^2)
  std::vector<double> log_norm;
  double slope = 0.0;
  double expected = 0.0;
};

/// Fitted slope of log ||K(w,.)|| (K_p when m is given) against log(1 - |w|^2).
KernelAsymptotic kernel_norm_asymptotic(const SpaceParams& space, std::span<const Point> w_schedule,
                                        std::optional<int> m = std::nullopt, const QuadratureSpec& spec = {});

struct PointwiseCheck {
  double exponent = 0.0;
  std::vector<double> ratios;
  std::size_t skipped = 0;
  bool empty = true;
  double min_ratio = 0.0;
  double max_ratio = 0.0;
  bool violated = false;  // some ratio below 1e-12
};

/// ||T_g K(w,.)||^q_{A^q_beta} / ((1-|w|^2)^exponent |Rg(w)|^q) over the grid.
PointwiseCheck pointwise_lower_bound_check(const HoloFunction& g, const PairParams& pair,
                                           std::span<const Point> w_grid, const HarnessConfig& config = {},
                                           std::optional<int> m = std::nullopt);

/// sqrt(3/2) sup |g'(z)| (1-|z|^2): an upper bound for ||T_g|| on A^2 (n = 1, p = q = 2, alpha = beta = 0).
double bloch_pair_upper_bound(const HoloFunction& g, double r_max = 0.999, const SupGrid& grid = {});

struct ConsistencyReport {
  Verdict verdict;
  std::vector<CVec> directions;
  std::vector<ProbeProfile> probes;  // one per direction
  bool probes_bounded = true;
  bool probes_decaying = true;
  bool consistent = true;
  Classification classification = Classification::Inconclusive;
};

ConsistencyReport consistency_report(const HoloFunction& g, const PairParams& pair, const HarnessConfig& config = {});

}  // namespace bergman
