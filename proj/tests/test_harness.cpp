#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/harness.hpp"

using namespace bergman;

namespace {

const PairParams kBloch{{1, 2.0, 0.0}, {1, 2.0, 0.0}};
const PairParams kIntegral{{1, 2.0, 0.0}, {1, 1.0, 0.0}};
const PairParams kConstancy{{1, 1.0, 1.0}, {1, 2.0, 0.0}};

HoloFunction z1() { return HoloFunction(Polynomial::monomial(MultiIndex({1u}))); }

}  // namespace

TEST_CASE("constant symbols give the zero operator") {
  for (const PairParams& pair : {kBloch, kIntegral, kConstancy}) {
    const Verdict v = classify(HoloFunction::constant(1, 3.0), pair);
    CHECK(v.constant_symbol);
    CHECK(v.criterion.last() == 0.0);
    CHECK(v.classification == Classification::Compact);
    CHECK_FALSE(v.constancy_flag);
  }
  const ConsistencyReport r = consistency_report(HoloFunction::constant(1, 3.0), kBloch);
  CHECK(r.consistent);
  for (double lb : r.probes[0].lower_bounds) CHECK(lb == 0.0);
}

TEST_CASE("Bloch pair") {
  const Verdict z = classify(z1(), kBloch);
  CHECK(z.branch == Branch::PAtMostQ);
  CHECK(z.gamma == doctest::Approx(1.0));
  CHECK(z.classification == Classification::Compact);
  const Verdict lg = classify(HoloFunction::log_kernel({1.0}), kBloch);
  CHECK(lg.classification == Classification::Bounded);
  CHECK(classify(HoloFunction::power_kernel({1.0}, 0.5), kBloch).classification == Classification::Unbounded);
}

TEST_CASE("constancy regime is flagged") {
  const Verdict v = classify(z1(), kConstancy);
  CHECK(v.gamma == doctest::Approx(-1.0));
  CHECK(v.constancy_flag);
  CHECK(v.classification == Classification::Unbounded);
  // seminorm r (1 - r^2)^(-1) at the last schedule radius
  CHECK(v.criterion.last() == doctest::Approx(0.999 / (1 - 0.999 * 0.999)).epsilon(1e-6));
}

TEST_CASE("integral branch") {
  const Verdict v = classify(z1(), kIntegral);
  CHECK(v.branch == Branch::PGreaterThanQ);
  CHECK(v.criterion.last() == doctest::Approx(std::numbers::pi / 12).epsilon(1e-6));
  CHECK(v.classification == Classification::Compact);
}

TEST_CASE("property: classify ignores added constants") {
  for (const PairParams& pair : {kBloch, kIntegral}) {
    const HoloFunction g = HoloFunction::log_kernel({0.8});
    const Verdict a = classify(g, pair);
    const Verdict b = classify(g + HoloFunction::constant(1, Complex{2, -1}), pair);
    CHECK(a.classification == b.classification);
    CHECK(a.criterion.last() == doctest::Approx(b.criterion.last()).epsilon(1e-12));
  }
}

TEST_CASE("property: criterion scales with lambda, classification does not change") {
  const HoloFunction g = HoloFunction::log_kernel({1.0});
  const double lam = 2.5;
  const Verdict a = classify(g, kBloch), b = classify(g * lam, kBloch);
  CHECK(b.criterion.last() == doctest::Approx(lam * a.criterion.last()).epsilon(1e-9));
  CHECK(a.classification == b.classification);
  const Verdict c = classify(g, kIntegral), d = classify(g * lam, kIntegral);
  CHECK(d.criterion.last() == doctest::Approx(std::pow(lam, 2.0) * c.criterion.last()).epsilon(1e-9));
  CHECK(c.classification == d.classification);
}

TEST_CASE("worst direction follows the singularity") {
  const HoloFunction g = HoloFunction::power_kernel({Complex{0.0, 1.0}}, 1.0);
  const CVec d = worst_direction(g);
  CHECK(std::abs(d[0] - Complex{0.0, 1.0}) < 1e-6);
}

TEST_CASE("probes: little Bloch decays, Bloch does not") {
  HarnessConfig cfg;
  const auto ws = w_schedule(CVec{1.0}, cfg.w_gaps);
  const ProbeProfile z = compactness_probe(z1(), kBloch, ws, cfg);
  CHECK(z.decaying);
  CHECK(z.bounded);
  const ProbeProfile lg = compactness_probe(HoloFunction::log_kernel({1.0}), kBloch, ws, cfg);
  CHECK_FALSE(lg.decaying);
  CHECK(lg.bounded);
  for (std::size_t i = 1; i < lg.lower_bounds.size(); ++i) CHECK(lg.lower_bounds[i] >= lg.lower_bounds[i - 1]);
}

TEST_CASE("property: lower bounds never exceed the certified upper bound") {
  HarnessConfig cfg;
  std::vector<double> gaps{1e-1, 1e-2, 1e-3};
  cfg.w_gaps = gaps;
  const HoloFunction gs[] = {z1(), HoloFunction::log_kernel({1.0}), HoloFunction::log_kernel({Complex{0.0, 0.9}}),
                             HoloFunction(Polynomial::monomial(MultiIndex({3u}), Complex{0.5, 0.5}))};
  for (const auto& g : gs) {
    const double upper = bloch_pair_upper_bound(g);
    const auto ws = w_schedule(worst_direction(g), gaps);
    for (const LowerBound& lb : empirical_lower_bound(g, kBloch, ws, cfg)) CHECK(lb.bound <= upper * (1 + 1e-6));
  }
}

TEST_CASE("kernel norm asymptotics") {
  std::vector<double> gaps{1e-1, std::pow(10.0, -1.5), 1e-2, std::pow(10.0, -2.5), 1e-3};
  const auto ws = w_schedule(CVec{1.0}, gaps);
  const HarnessConfig cfg;
  const KernelAsymptotic a = kernel_norm_asymptotic(SpaceParams{1, 2.0, 0.0}, ws, std::nullopt, cfg.probe_spec);
  CHECK(a.expected == doctest::Approx(-1.0));
  CHECK(std::abs(a.slope - a.expected) < 0.05);
  const KernelAsymptotic b = kernel_norm_asymptotic(SpaceParams{1, 0.5, 0.0}, ws, 3, cfg.probe_spec);
  CHECK(b.expected == doctest::Approx(-2.0));
  CHECK(std::abs(b.slope - b.expected) < 0.1);
}

TEST_CASE("A^1 kernel norm follows the log law") {
  // ||K_w||_{A^1} = pi (-log(1-|w|^2)) / |w|^2
  const HarnessConfig cfg;
  for (double gap : {1e-2, 1e-4}) {
    const Point w{1.0 - gap};
    const double exact = std::numbers::pi * -std::log(w.one_minus_norm_sq()) / (1 - w.one_minus_norm_sq());
    CHECK(bergman_norm(kernel_K(w, SpaceParams{1, 1.0, 0.0}), SpaceParams{1, 1.0, 0.0}, cfg.probe_spec).value ==
          doctest::Approx(exact).epsilon(1e-4));
  }
  std::vector<double> deep{1e-4, std::pow(10.0, -4.5), 1e-5, std::pow(10.0, -5.5), 1e-6};
  const auto ws = w_schedule(CVec{1.0}, deep);
  const KernelAsymptotic a = kernel_norm_asymptotic(SpaceParams{1, 1.0, 0.0}, ws, std::nullopt, cfg.probe_spec);
  CHECK(a.expected == doctest::Approx(0.0));
  CHECK(std::abs(a.slope) < 0.1);
}

TEST_CASE("pointwise lower bound ratios") {
  std::vector<Point> ws;
  for (double w : {0.5, 0.7, 0.9, 0.99}) ws.push_back(Point{w});
  const PointwiseCheck pc = pointwise_lower_bound_check(z1(), kBloch, ws);
  CHECK_FALSE(pc.empty);
  CHECK_FALSE(pc.violated);
  CHECK(pc.min_ratio > 0.0);
  // closed form for g = z: pi (-log(1-w^2) - w^2) / w^6 at w = 0.5
  const double w = 0.5;
  CHECK(pc.ratios[0] == doctest::Approx(std::numbers::pi * (-std::log(1 - w * w) - w * w) / std::pow(w, 6)).epsilon(1e-6));
  const PointwiseCheck none = pointwise_lower_bound_check(HoloFunction::constant(1, 1.0), kBloch, ws);
  CHECK(none.empty);
  CHECK(none.skipped == ws.size());
}

TEST_CASE("property: pointwise ratio ignores the normalization of g") {
  std::vector<Point> ws{Point{0.6}, Point{0.9}};
  const HoloFunction g = HoloFunction::log_kernel({1.0});
  const PointwiseCheck a = pointwise_lower_bound_check(g, kBloch, ws);
  const PointwiseCheck b = pointwise_lower_bound_check(g * Complex{0.0, 3.0}, kBloch, ws);
  CHECK(b.min_ratio == doctest::Approx(a.min_ratio).epsilon(1e-8));
}

TEST_CASE("consistency reports on the Bloch pair") {
  const ConsistencyReport z = consistency_report(z1(), kBloch);
  CHECK(z.consistent);
  CHECK(z.classification == Classification::Compact);
  const ConsistencyReport c = consistency_report(z1(), kConstancy);
  CHECK(c.consistent);
  CHECK(c.verdict.constancy_flag);
  CHECK_FALSE(c.probes_bounded);
}

TEST_CASE("configuration is validated") {
  HarnessConfig cfg;
  cfg.schedule = {0.99, 0.9};
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  HarnessConfig g;
  g.w_gaps = {1e-3, 1e-2};
  CHECK_THROWS_AS(g.validate(), DomainError);
  CHECK_THROWS_AS(classify(z1(), PairParams{{1, -1.0, 0.0}, {1, 2.0, 0.0}}), DomainError);
}
