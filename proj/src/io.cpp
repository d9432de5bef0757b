#include "bergman/io.hpp"

namespace bergman {

namespace {

Json point_json(const Point& p) { return to_json(p.coords()); }

}  // namespace

Json to_json(Complex c) { return Json{{"re", c.real()}, {"im", c.imag()}}; }

Complex complex_from_json(const Json& j) { return {j.at("re").get<double>(), j.at("im").get<double>()}; }

Json to_json(const CVec& v) {
  Json a = Json::array();
  for (const auto& c : v) a.push_back(to_json(c));
  return a;
}

Json to_json(const Polynomial& p) {
  Json a = Json::array();
  for (const auto& [idx, c] : p.terms()) {
    a.push_back(Json{{"exponents", idx.exponents()}, {"re", c.real()}, {"im", c.imag()}});
  }
  return a;
}

Polynomial polynomial_from_json(const Json& j, std::size_t n) {
  Polynomial p(n);
  for (const auto& t : j) {
    auto e = t.at("exponents").get<std::vector<std::uint32_t>>();
    if (e.size() != n) throw DomainError("polynomial_from_json: exponent vector has the wrong length");
    p.add_term(MultiIndex(std::move(e)), {t.at("re").get<double>(), t.at("im").get<double>()});
  }
  return p;
}

Json to_json(const HoloFunction& h) {
  Json closed = Json::array();
  for (const auto& t : h.power_terms()) {
    closed.push_back(Json{{"kind", "power_kernel"},
                          {"coef", to_json(t.coef)},
                          {"base", to_json(t.base)},
                          {"u_power", t.u_power},
                          {"s", t.s}});
  }
  for (const auto& t : h.log_terms()) {
    closed.push_back(Json{{"kind", "log_kernel"}, {"coef", to_json(t.coef)}, {"base", to_json(t.base)}});
  }
  return Json{{"dimension", h.dim()}, {"polynomial", to_json(h.polynomial_part())}, {"closed", closed}};
}

HoloFunction holo_from_json(const Json& j) {
  const auto n = j.at("dimension").get<std::size_t>();
  std::vector<PowerTerm> powers;
  std::vector<LogTerm> logs;
  for (const auto& t : j.at("closed")) {
    CVec base;
    for (const auto& c : t.at("base")) base.push_back(complex_from_json(c));
    const Complex coef = complex_from_json(t.at("coef"));
    const auto kind = t.at("kind").get<std::string>();
    if (kind == "log_kernel") {
      logs.push_back({coef, std::move(base)});
    } else if (kind == "power_kernel") {
      powers.push_back({coef, std::move(base), t.value("u_power", 0u), t.at("s").get<double>()});
    } else {
      throw DomainError("holo_from_json: unknown closed symbol kind '" + kind + "'");
    }
  }
  return HoloFunction::from_terms(polynomial_from_json(j.at("polynomial"), n), std::move(powers), std::move(logs));
}

Json to_json(const SpaceParams& s) { return Json{{"n", s.n}, {"p", s.p}, {"alpha", s.alpha}}; }

Json to_json(const PairParams& p) {
  return Json{{"n", p.n()}, {"p", p.p()}, {"q", p.q()}, {"alpha", p.alpha()}, {"beta", p.beta()}};
}

Json to_json(const QuadratureSpec& s) {
  return Json{{"r_max", s.r_max},           {"radial_nodes", s.radial_nodes}, {"angular_nodes", s.angular_nodes},
              {"mc_samples", s.mc_samples}, {"seed", s.seed},                 {"richardson", s.richardson}};
}

Json to_json(const NormResult& r) {
  Json j{{"value", r.value}, {"std_error", r.std_error}, {"evaluations", r.evaluations}};
  if (!r.schedule.empty()) {
    j["divergent"] = r.divergent;
    j["trend"] = to_string(r.trend);
    j["schedule"] = r.schedule;
    j["schedule_values"] = r.schedule_values;
  }
  return j;
}

Json to_json(const ScheduleResult& r) {
  return Json{{"r_max", r.r_max}, {"values", r.values}, {"trend", to_string(r.trend)}};
}

Json to_json(const DecayProfile& d) {
  return Json{{"shell_radii", d.radii}, {"shell_sups", d.sups}, {"slope", d.slope}, {"vanishing", d.vanishing}};
}

Json to_json(const SupResult& s) {
  return Json{{"value", s.value}, {"argmax", point_json(s.argmax)}, {"evaluations", s.evaluations}};
}

Json to_json(const ProbeProfile& p) {
  Json pts = Json::array();
  for (const auto& pt : p.points) {
    pts.push_back(Json{{"w", point_json(pt.w)},
                       {"gap", 1.0 - pt.w.norm()},
                       {"kernel_norm", pt.kernel_norm},
                       {"tg_norm", pt.tg_norm},
                       {"normalized", pt.normalized}});
  }
  return Json{{"kernel", p.uses_kp ? "K_p" : "K"}, {"m", p.m},           {"points", pts},
              {"lower_bounds", p.lower_bounds},   {"growth", p.growth},  {"bounded", p.bounded},
              {"decaying", p.decaying}};
}

Json to_json(const Verdict& v) {
  Json j{{"branch", to_string(v.branch)},
         {"gamma", v.gamma},
         {"constancy_flag", v.constancy_flag},
         {"constant_symbol", v.constant_symbol},
         {"criterion_schedule", to_json(v.criterion)},
         {"criterion_value", v.criterion.last()},
         {"criterion_finite", v.criterion_finite()},
         {"criterion_vanishing", v.criterion_vanishing()}};
  j["seminorm"] = v.seminorm ? to_json(*v.seminorm) : Json();
  j["decay_profile"] = v.decay ? to_json(*v.decay) : Json();
  j["classification"] = to_string(v.classification);
  return j;
}

Json to_json(const ConsistencyReport& r) {
  Json probes = Json::array();
  Json lower = Json::array();
  for (std::size_t k = 0; k < r.probes.size(); ++k) {
    Json pj = to_json(r.probes[k]);
    pj["direction"] = to_json(r.directions[k]);
    probes.push_back(pj);
    for (std::size_t i = 0; i < r.probes[k].points.size(); ++i) {
      lower.push_back(Json{{"w", point_json(r.probes[k].points[i].w)}, {"bound", r.probes[k].lower_bounds[i]}});
    }
  }
  return Json{{"verdict", to_json(r.verdict)},
              {"lower_bounds", lower},
              {"probe_profile", probes},
              {"probes_bounded", r.probes_bounded},
              {"probes_decaying", r.probes_decaying},
              {"consistency", r.consistent ? "CONSISTENT" : "INCONSISTENT"},
              {"classification", to_string(r.classification)}};
}

Json to_json(const LatticeCert& c) {
  Json j{{"verified", c.verified},         {"covering_ok", c.covering_ok},
         {"separation_ok", c.separation_ok}, {"disjoint_ok", c.disjoint_ok},
         {"overlap_max", c.overlap_max},   {"min_separation", c.min_separation},
         {"probes", c.probes},             {"seed", c.seed}};
  j["witness"] = c.witness ? point_json(*c.witness) : Json();
  return j;
}

Json to_json(const Lattice& lat) {
  Json nodes = Json::array();
  for (const auto& z : lat.nodes) nodes.push_back(point_json(z));
  return Json{{"n", lat.n},
              {"eta", lat.eta},
              {"r_max", lat.r_max},
              {"density", lat.density},
              {"candidates", lat.candidates},
              {"node_count", lat.nodes.size()},
              {"cert", to_json(lat.cert)},
              {"nodes", nodes}};
}

}  // namespace bergman
