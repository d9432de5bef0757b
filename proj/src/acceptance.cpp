#include "bergman/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "bergman/harness.hpp"
#include "bergman/holo.hpp"
#include "bergman/khinchine.hpp"
#include "bergman/lattice.hpp"
#include "bergman/norms.hpp"

namespace bergman {

namespace {

using Rng = std::mt19937_64;

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

std::string sci(double x) { return fmt("%.3g", x); }

Complex unit_square(Rng& rng) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double re = u(rng);
  return {re, u(rng)};
}

Polynomial random_polynomial(Rng& rng, std::size_t n, std::uint32_t max_degree, int max_terms) {
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<std::uint32_t> deg(0, max_degree);
  Polynomial p(n);
  const int count = terms(rng);
  for (int t = 0; t < count; ++t) {
    const std::uint32_t d = deg(rng);
    std::vector<std::uint32_t> e(n, 0);
    if (n == 1) {
      e[0] = d;
    } else {
      std::uniform_int_distribution<std::uint32_t> split(0, d);
      e[0] = split(rng);
      e[1] = d - e[0];
    }
    p.add_term(MultiIndex(std::move(e)), unit_square(rng));
  }
  return p;
}

// ---------------------------------------------------------------------------

CriterionResult tg_identity(const AcceptanceOptions& o) {
  CriterionResult r;
  Rng rng(o.seed);
  double worst = 0.0, worst_origin = 0.0;
  const auto t0 = std::chrono::steady_clock::now();
  for (int k = 0; k < 200; ++k) {
    const std::size_t n = k < 100 ? 1 : 2;
    const Polynomial f = random_polynomial(rng, n, 30, 40);
    const Polynomial g = random_polynomial(rng, n, 30, 40);
    const Polynomial tf = apply_tg_exact(f, g);
    worst = std::max(worst, max_coefficient_difference(tf.radial_derivative(), f * g.radial_derivative()));
    worst_origin = std::max(worst_origin, std::abs(tf.constant_term()));
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = worst <= 1e-12 && worst_origin == 0.0 && secs < 10.0;
  r.detail = "max |R(T_g f) - f Rg| = " + sci(worst) + " over 200 pairs, runtime " + fmt("%.2f", secs) + " s";
  r.data = {{"pairs", 200}, {"max_error", worst}, {"max_value_at_origin", worst_origin}};
  return r;
}

CriterionResult tg_of_one(const AcceptanceOptions& o) {
  CriterionResult r;
  Rng rng(o.seed + 1);
  int mismatches = 0;
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = k % 2 == 0 ? 1 : 2;
    const Polynomial g = random_polynomial(rng, n, 30, 40);
    const Polynomial expected = g - Polynomial::constant(n, g.constant_term());
    if (!(apply_tg_exact(Polynomial::constant(n, 1.0), g) == expected)) ++mismatches;
  }
  r.passed = mismatches == 0;
  r.detail = std::to_string(mismatches) + " of 100 symbols differ from g - g(0)";
  r.data = {{"symbols", 100}, {"mismatches", mismatches}};
  return r;
}

CriterionResult cesaro_law(const AcceptanceOptions& o) {
  CriterionResult r;
  Rng rng(o.seed + 2);
  const HoloFunction g = HoloFunction::log_kernel({1.0});
  constexpr std::uint32_t kDegree = 80;
  double coef_err = 0.0, point_err = 0.0;
  std::uniform_real_distribution<double> rad(0.0, 0.6), ang(0.0, 2.0 * std::numbers::pi);
  for (int trial = 0; trial < 20; ++trial) {
    const Polynomial f = random_polynomial(rng, 1, 20, 21);
    const Polynomial t = apply_tg_series(f, g, kDegree);
    Complex partial{0.0, 0.0};
    for (std::uint32_t N = 0; N + 1 <= kDegree; ++N) {
      partial += f.coefficient(MultiIndex({N}));
      const Complex got = t.coefficient(MultiIndex({N + 1}));
      coef_err = std::max(coef_err, std::abs(got - partial / static_cast<double>(N + 1)));
    }
    const TgEvaluator quad(HoloFunction(f), g);
    for (int k = 0; k < 10; ++k) {
      const Point z{std::polar(rad(rng), ang(rng))};
      point_err = std::max(point_err, std::abs(quad(z) - t(z)));
    }
  }
  r.passed = coef_err <= 1e-10 && point_err <= 1e-8;
  r.detail = "coefficient error " + sci(coef_err) + ", quadrature vs series " + sci(point_err);
  r.data = {{"functions", 20}, {"series_degree", kDegree}, {"coefficient_error", coef_err},
            {"pointwise_error", point_err}};
  return r;
}

// pi int_0^1 u^k (1-u)^alpha du by composite Simpson in u = r^2 (10^4 panels).
double simpson_monomial_norm_sq(unsigned k, double alpha) {
  constexpr int kPanels = 10000;
  const double h = 1.0 / kPanels;
  auto F = [&](double u) { return std::pow(u, k) * std::pow(1.0 - u, alpha); };
  double s = F(0.0) + F(1.0);
  for (int i = 1; i < kPanels; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * F(i * h);
  return std::numbers::pi * s * h / 3.0;
}

CriterionResult monomial_norms(const AcceptanceOptions&) {
  CriterionResult r;
  QuadratureSpec spec;
  spec.r_max = 1.0 - 1e-9;
  spec.richardson = true;
  double worst = 0.0, oracle_vs_closed = 0.0;
  Json rows = Json::array();
  for (double alpha : {0.0, 1.0, 2.5}) {
    const SpaceParams space{1, 2.0, alpha};
    for (unsigned k = 0; k <= 10; ++k) {
      const double oracle = simpson_monomial_norm_sq(k, alpha);
      const double closed = std::numbers::pi * std::exp(std::lgamma(k + 1.0) + std::lgamma(alpha + 1.0) -
                                                         std::lgamma(k + alpha + 2.0));
      const double v = bergman_norm(HoloFunction(Polynomial::monomial(MultiIndex({k}))), space, spec).value;
      const double rel = std::abs(v * v - oracle) / oracle;
      worst = std::max(worst, rel);
      oracle_vs_closed = std::max(oracle_vs_closed, std::abs(oracle - closed) / closed);
      rows.push_back({{"alpha", alpha}, {"k", k}, {"norm_sq", v * v}, {"oracle", oracle}, {"closed_form", closed}});
    }
  }
  r.passed = worst <= 1e-8 && oracle_vs_closed <= 1e-8;
  r.detail = "max rel error vs Simpson oracle " + sci(worst) + " (oracle vs closed form " + sci(oracle_vs_closed) + ")";
  r.data = {{"max_relative_error", worst}, {"oracle_vs_closed_form", oracle_vs_closed}, {"rows", rows}};
  return r;
}

CriterionResult norm_equivalence(const AcceptanceOptions& o) {
  CriterionResult r;
  const QuadratureSpec base;
  const QuadratureSpec fine = base.refined();
  Rng rng(o.seed + 4);
  std::vector<HoloFunction> corpus;
  for (int k = 0; k < 100; ++k) corpus.emplace_back(random_polynomial(rng, 1, 20, 8));
  bool ok = true;
  double worst_change = 0.0;
  Json rows = Json::array();
  for (double p : {0.5, 1.0, 2.0, 4.0}) {
    for (double alpha : {0.0, 1.0}) {
      const SpaceParams space{1, p, alpha};
      double width[2];
      double lo[2], hi[2];
      for (int level = 0; level < 2; ++level) {
        const QuadratureSpec& spec = level == 0 ? base : fine;
        lo[level] = INFINITY;
        hi[level] = 0.0;
        for (const auto& f : corpus) {
          const double ratio = equivalent_norm(f, space, spec).value / bergman_norm(f, space, spec).value;
          lo[level] = std::min(lo[level], ratio);
          hi[level] = std::max(hi[level], ratio);
        }
        width[level] = hi[level] / lo[level];
      }
      const double change = std::abs(width[1] / width[0] - 1.0);
      const bool cell = std::isfinite(width[0]) && std::isfinite(width[1]) && lo[0] > 0.0 && change < 0.1;
      ok = ok && cell;
      worst_change = std::max(worst_change, change);
      rows.push_back({{"p", p}, {"alpha", alpha}, {"c1", lo[0]}, {"c2", hi[0]}, {"c1_refined", lo[1]},
                      {"c2_refined", hi[1]}, {"relative_change", change}});
    }
  }
  r.passed = ok;
  r.detail = "largest relative change of c2/c1 under refinement " + sci(worst_change);
  r.data = {{"corpus", corpus.size()}, {"max_relative_change", worst_change}, {"cells", rows}};
  return r;
}

CriterionResult lattice_cert(const AcceptanceOptions&) {
  CriterionResult r;
  const Lattice lat = build_lattice(0.5, 0.99);
  const double predicted = predicted_node_count(0.5, 0.99);
  const double ratio = static_cast<double>(lat.nodes.size()) / predicted;
  bool all = true;
  std::vector<int> overlaps;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const LatticeCert c = verify_lattice(lat, 100000, seed);
    all = all && c.verified;
    overlaps.push_back(c.overlap_max);
  }
  bool reproducible = true;
  for (int v : overlaps) reproducible = reproducible && std::abs(v - overlaps.front()) <= 1;
  r.passed = all && reproducible && ratio >= 0.5 && ratio <= 2.0;
  std::string ov;
  for (int v : overlaps) ov += (ov.empty() ? "" : ",") + std::to_string(v);
  r.detail = std::to_string(lat.nodes.size()) + " nodes (" + fmt("%.2f", ratio) + "x prediction), overlap " + ov +
             (all ? ", certified on 5 seeds" : ", certification failed");
  r.data = {{"nodes", lat.nodes.size()}, {"predicted", predicted}, {"overlap_max", overlaps}, {"certified", all}};
  return r;
}

CriterionResult khinchine_envelope(const AcceptanceOptions& o) {
  CriterionResult r;
  Rng rng(o.seed + 6);
  double p2_err = 0.0;
  for (int k = 0; k < 100; ++k) {
    std::uniform_int_distribution<int> len(1, 16);
    CVec c(static_cast<std::size_t>(len(rng)));
    for (auto& x : c) x = unit_square(rng);
    p2_err = std::max(p2_err, std::abs(khinchine_ratio(c, 2.0) - 1.0));
  }
  bool ok = p2_err <= 1e-12;
  Json rows = Json::array();
  std::string detail = "p=2 error " + sci(p2_err);
  for (double p : {0.5, 1.0, 4.0}) {
    Rng local(mix_seed(o.seed + 6, static_cast<std::uint64_t>(p * 16)));
    double lo = INFINITY, hi = 0.0, width8 = 0.0, width16 = 0.0;
    for (std::size_t m = 1; m <= 16; ++m) {
      for (int k = 0; k < 100; ++k) {
        CVec c(m);
        for (auto& x : c) x = unit_square(local);
        const double v = khinchine_ratio(c, p);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
      if (m == 8) width8 = hi / lo;
      if (m == 16) width16 = hi / lo;
    }
    const double stability = width16 / width8;
    const bool cell = lo >= 0.25 && hi <= 4.0 && stability <= 1.1;
    ok = ok && cell;
    rows.push_back({{"p", p}, {"min", lo}, {"max", hi}, {"width_m8", width8}, {"width_m16", width16}});
    detail += ", p=" + fmt("%g", p) + " [" + fmt("%.3f", lo) + "," + fmt("%.3f", hi) + "] x" + fmt("%.3f", stability);
  }
  r.passed = ok;
  r.detail = detail;
  r.data = {{"p2_error", p2_err}, {"envelopes", rows}};
  return r;
}

CriterionResult kernel_slopes(const AcceptanceOptions&) {
  CriterionResult r;
  const HarnessConfig cfg;
  std::vector<double> gaps;
  for (int k = 2; k <= 6; ++k) gaps.push_back(std::pow(10.0, -k / 2.0));
  const auto ws = w_schedule(CVec{1.0}, gaps);
  bool ok = true;
  double worst = 0.0;
  Json rows = Json::array();
  auto check = [&](double p, std::optional<int> m) {
    const KernelAsymptotic a = kernel_norm_asymptotic(SpaceParams{1, p, 0.0}, ws, m, cfg.probe_spec);
    const double rel = std::abs(a.slope - a.expected) / std::abs(a.expected);
    ok = ok && rel <= 0.05;
    worst = std::max(worst, rel);
    rows.push_back({{"p", p}, {"kernel", m ? "K_p" : "K"}, {"m", m.value_or(0)}, {"slope", a.slope},
                    {"expected", a.expected}, {"relative_error", rel}});
  };
  for (double p : {1.5, 2.0, 4.0}) check(p, std::nullopt);
  for (double p : {0.5, 1.0}) check(p, 3);
  r.passed = ok;
  r.detail = "largest relative slope error " + fmt("%.2f%%", 100.0 * worst) + " over 5 cases";
  r.data = {{"max_relative_error", worst}, {"cases", rows}};
  return r;
}

struct Cell {
  const char* pair;
  const char* symbol;
  ConsistencyReport report;
};

CriterionResult consistency_matrix(const AcceptanceOptions&) {
  CriterionResult r;
  const std::vector<std::pair<const char*, HoloFunction>> symbols{
      {"z", HoloFunction(Polynomial::monomial(MultiIndex({1u})))},
      {"-log(1-z)", HoloFunction::log_kernel({1.0})},
      {"(1-z)^-1/2", HoloFunction::power_kernel({1.0}, 0.5)},
      {"(1-z)^-1", HoloFunction::power_kernel({1.0}, 1.0)}};
  const std::vector<std::pair<const char*, PairParams>> pairs{
      {"p=q=2", {{1, 2.0, 0.0}, {1, 2.0, 0.0}}},
      {"p=2,q=1", {{1, 2.0, 0.0}, {1, 1.0, 0.0}}},
      {"p=1,q=2,alpha=1", {{1, 1.0, 1.0}, {1, 2.0, 0.0}}}};
  std::vector<Cell> cells;
  for (const auto& [pn, pair] : pairs) {
    for (const auto& [gn, g] : symbols) cells.push_back({pn, gn, consistency_report(g, pair)});
  }
  bool consistent = true;
  Json rows = Json::array();
  for (const auto& c : cells) {
    consistent = consistent && c.report.consistent;
    rows.push_back({{"pair", c.pair}, {"symbol", c.symbol}, {"classification", to_string(c.report.classification)},
                    {"criterion_trend", to_string(c.report.verdict.criterion.trend)},
                    {"probes_bounded", c.report.probes_bounded}, {"probes_decaying", c.report.probes_decaying},
                    {"constancy_flag", c.report.verdict.constancy_flag}, {"consistent", c.report.consistent}});
  }
  auto cls = [&](std::size_t i) { return cells[i].report.classification; };
  const bool bloch = cls(0) != Classification::Unbounded && cls(0) != Classification::Inconclusive &&
                     cls(1) != Classification::Unbounded && cls(1) != Classification::Inconclusive;
  const bool non_bloch = cls(2) == Classification::Unbounded && cls(3) == Classification::Unbounded;
  bool flagged = true;
  for (std::size_t i = 8; i < 12; ++i) flagged = flagged && cells[i].report.verdict.constancy_flag;
  r.passed = consistent && bloch && non_bloch && flagged;
  std::string row;
  for (const auto& c : cells) row += std::string(row.empty() ? "" : " ") + to_string(c.report.classification);
  r.detail = std::string(consistent ? "12/12 consistent" : "inconsistent cells present") + "; " + row;
  r.data = {{"cells", rows}};
  return r;
}

CriterionResult lower_bound_envelope(const AcceptanceOptions&) {
  CriterionResult r;
  const HoloFunction g(Polynomial::monomial(MultiIndex({1u})));
  const PairParams pair{{1, 2.0, 0.0}, {1, 2.0, 0.0}};
  std::vector<Point> ws;
  for (double w : {0.5, 0.6, 0.7, 0.8, 0.9, 0.95, 0.99}) ws.push_back(Point{Complex{w, 0.0}});
  const PointwiseCheck pc = pointwise_lower_bound_check(g, pair, ws);
  const double spread = pc.empty ? INFINITY : pc.max_ratio / pc.min_ratio;
  r.passed = !pc.empty && pc.min_ratio > 0.0 && spread <= 4.0;
  r.detail = "ratios in [" + fmt("%.4g", pc.min_ratio) + ", " + fmt("%.4g", pc.max_ratio) + "], spread x" +
             fmt("%.3f", spread);
  r.data = {{"exponent", pc.exponent}, {"ratios", pc.ratios}, {"spread", spread}};
  return r;
}

CriterionResult compactness_probes(const AcceptanceOptions&) {
  CriterionResult r;
  const PairParams pair{{1, 2.0, 0.0}, {1, 2.0, 0.0}};
  const HarnessConfig cfg;
  const auto ws = w_schedule(CVec{1.0}, cfg.w_gaps);
  const ProbeProfile z = compactness_probe(HoloFunction(Polynomial::monomial(MultiIndex({1u}))), pair, ws, cfg);
  const ProbeProfile lg = compactness_probe(HoloFunction::log_kernel({1.0}), pair, ws, cfg);
  double at_1e3 = NAN;
  for (std::size_t i = 0; i < cfg.w_gaps.size(); ++i) {
    if (std::abs(cfg.w_gaps[i] - 1e-3) < 1e-12) at_1e3 = z.points[i].normalized;
  }
  double log_min_ratio = INFINITY;
  for (const auto& pt : lg.points) log_min_ratio = std::min(log_min_ratio, pt.normalized / lg.points.front().normalized);
  r.passed = at_1e3 < 1e-2 && log_min_ratio >= 0.5;
  r.detail = "g=z probe " + sci(at_1e3) + " at 1-|w|=1e-3; log probe min/initial " + fmt("%.3f", log_min_ratio);
  Json zp = Json::array(), lp = Json::array();
  for (std::size_t i = 0; i < ws.size(); ++i) {
    zp.push_back({{"gap", cfg.w_gaps[i]}, {"normalized", z.points[i].normalized}});
    lp.push_back({{"gap", cfg.w_gaps[i]}, {"normalized", lg.points[i].normalized}});
  }
  r.data = {{"z_probe", zp}, {"log_probe", lp}};
  return r;
}

}  // namespace

const char* criterion_name(int id) {
  static const char* names[] = {"tg-identity",      "tg-of-one",        "cesaro-law",         "monomial-norms",
                                "norm-equivalence", "lattice-cert",     "khinchine-envelope", "kernel-slopes",
                                "consistency",      "lower-bound-ratio", "compactness-probes"};
  if (id < 1 || id > kCriterionCount) throw DomainError("criterion id out of range 1.." + std::to_string(kCriterionCount));
  return names[id - 1];
}

CriterionResult run_criterion(int id, const AcceptanceOptions& opts) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  static const Fn fns[] = {tg_identity,      tg_of_one,          cesaro_law,    monomial_norms,
                           norm_equivalence, lattice_cert,       khinchine_envelope, kernel_slopes,
                           consistency_matrix, lower_bound_envelope, compactness_probes};
  const char* name = criterion_name(id);
  const auto t0 = std::chrono::steady_clock::now();
  CriterionResult r;
  try {
    r = fns[id - 1](opts);
  } catch (const std::exception& e) {
    r = CriterionResult{};
    r.passed = false;
    r.detail = std::string("error: ") + e.what();
  }
  r.id = id;
  r.name = name;
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return r;
}

std::vector<CriterionResult> run_acceptance(const std::vector<int>& ids, const AcceptanceOptions& opts) {
  std::vector<CriterionResult> out;
  for (int id : ids) out.push_back(run_criterion(id, opts));
  return out;
}

std::string format_line(const CriterionResult& r) {
  char head[64];
  std::snprintf(head, sizeof head, "%s %2d %-19s ", r.passed ? "PASS" : "FAIL", r.id, r.name.c_str());
  return head + r.detail;
}

}  // namespace bergman
