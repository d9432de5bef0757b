// bergman_lab: command-line front end over the bergman library.
#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "bergman/acceptance.hpp"
#include "bergman/harness.hpp"
#include "bergman/io.hpp"
#include "bergman/khinchine.hpp"
#include "bergman/lattice.hpp"
#include "bergman/norms.hpp"
#include "bergman/parallel.hpp"
#include "bergman/symbol.hpp"

namespace fs = std::filesystem;
using namespace bergman;

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitValidation = 2;
constexpr int kExitDivergent = 3;

struct Globals {
  int threads = 0;
  std::string out = "out";
  bool strict = false;
  std::uint64_t seed = 20240607;
};

struct QuadOpts {
  double r_max = 0.999;
  int radial = 16;
  int angular = 512;
  int mc = 1 << 17;
  bool richardson = false;

  void add(CLI::App* cmd) {
    cmd->add_option("--rmax", r_max, "truncation radius");
    cmd->add_option("--radial-nodes", radial, "Gauss order per radial panel");
    cmd->add_option("--angular-nodes", angular, "angular points (n = 1)");
    cmd->add_option("--mc-samples", mc, "Monte Carlo samples (n >= 2)");
    cmd->add_flag("--richardson,!--no-richardson", richardson, "extrapolate r_max -> 1");
  }
  QuadratureSpec spec(std::uint64_t seed) const {
    QuadratureSpec s;
    s.r_max = r_max;
    s.radial_nodes = radial;
    s.angular_nodes = angular;
    s.mc_samples = mc;
    s.seed = seed;
    s.richardson = richardson;
    s.validate();
    return s;
  }
};

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

class Output {
 public:
  Output(const Globals& g, std::string command) : dir_(g.out), command_(std::move(command)) {}

  void write(const Json& config, const Json& result) const {
    fs::create_directories(dir_);
    Json report{{"schema", "bergman-lab/report"},
                {"version", kReportSchemaVersion},
                {"command", command_},
                {"config", config},
                {"result", result}};
    std::ofstream(dir_ / "report.json") << report.dump(2) << "\n";
  }
  void table(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) const {
    write_csv("table.csv", header, rows);
  }
  void profile(const std::vector<std::string>& header, const std::vector<std::vector<std::string>>& rows) const {
    write_csv("profile.csv", header, rows);
  }
  void timing(double ms, const Json& extra = Json::object()) const {
    Json t{{"runtime_ms", ms}};
    for (auto it = extra.begin(); it != extra.end(); ++it) t[it.key()] = it.value();
    std::ofstream(dir_ / "timing.json") << t.dump(2) << "\n";
  }

 private:
  void write_csv(const char* name, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) const {
    fs::create_directories(dir_);
    std::ofstream os(dir_ / name);
    auto line = [&](const std::vector<std::string>& cells) {
      for (std::size_t k = 0; k < cells.size(); ++k) os << (k ? "," : "") << csv_field(cells[k]);
      os << "\n";
    };
    line(header);
    for (const auto& r : rows) line(r);
  }

  fs::path dir_;
  std::string command_;
};

double elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

// ---------------------------------------------------------------------------

struct NormCmd {
  std::string f = "1";
  std::size_t n = 1;
  double p = 2.0;
  double alpha = 0.0;
  bool equivalent = false;
  bool check_divergence = false;
  QuadOpts quad{1.0 - 1e-9, 16, 512, 1 << 17, true};

  int run(const Globals& g) const {
    const auto t0 = std::chrono::steady_clock::now();
    const SpaceParams space{n, p, alpha};
    space.validate();
    const QuadratureSpec spec = quad.spec(g.seed);
    const HoloFunction h = parse_symbol(f, n);
    NormOptions opts;
    opts.check_divergence = check_divergence || g.strict;

    const NormResult a = bergman_norm(h, space, spec, opts);
    Json result{{"function", h.describe()}, {"function_terms", to_json(h)}, {"norm", to_json(a)}};
    std::vector<std::vector<std::string>> table{{"bergman_norm", num(a.value), num(a.std_error)}};
    std::printf("norm = %.12g\n", a.value);
    bool divergent = a.divergent;
    if (equivalent) {
      const NormResult b = equivalent_norm(h, space, spec, opts);
      const double ratio = b.value / a.value;
      result["equivalent_norm"] = to_json(b);
      result["ratio"] = ratio;
      table.push_back({"equivalent_norm", num(b.value), num(b.std_error)});
      table.push_back({"ratio", num(ratio), ""});
      std::printf("equivalent norm = %.12g\nratio = %.12g\n", b.value, ratio);
      divergent = divergent || b.divergent;
    }
    const Json config{{"f", f}, {"space", to_json(space)}, {"quadrature", to_json(spec)},
                      {"equivalent", equivalent}, {"check_divergence", opts.check_divergence},
                      {"strict", g.strict}, {"seed", g.seed}};
    Output out(g, "norm");
    out.write(config, result);
    out.table({"quantity", "value", "std_error"}, table);
    std::vector<std::vector<std::string>> prof;
    for (std::size_t k = 0; k < a.schedule.size(); ++k) {
      prof.push_back({"bergman_norm_pow_p", num(a.schedule[k]), num(a.schedule_values[k])});
    }
    out.profile({"quantity", "r_max", "value"}, prof);
    out.timing(elapsed_ms(t0));
    if (divergent) {
      std::fprintf(stderr, "norm: the truncated integrals diverge along the r_max schedule\n");
      if (g.strict) return kExitDivergent;
    }
    return 0;
  }
};

struct ClassifyCmd {
  std::string g_text;
  std::size_t n = 1;
  double p = 2.0, q = 2.0, alpha = 0.0, beta = 0.0;
  bool probe = false;
  std::optional<int> kernel_power;
  std::vector<double> schedule = default_rmax_schedule();
  std::vector<double> gaps = default_w_gaps();
  double growth_factor = 10.0;
  double stable_tolerance = 0.1;
  QuadOpts quad;

  int run(const Globals& gl) const {
    const auto t0 = std::chrono::steady_clock::now();
    const PairParams pair{{n, p, alpha}, {n, q, beta}};
    pair.validate();
    HarnessConfig cfg;
    cfg.spec = quad.spec(gl.seed);
    cfg.probe_spec.seed = gl.seed;
    cfg.schedule = schedule;
    cfg.w_gaps = gaps;
    cfg.trend.growth_factor = growth_factor;
    cfg.trend.stable_tolerance = stable_tolerance;
    cfg.kernel_power = kernel_power;
    cfg.validate();
    const HoloFunction g = parse_symbol(g_text, n);

    Json result{{"symbol_descriptor", g.describe()}, {"symbol", to_json(g)}, {"pair", to_json(pair)}};
    Verdict verdict;
    Classification cls;
    std::vector<std::vector<std::string>> prof;
    if (probe) {
      const ConsistencyReport rep = consistency_report(g, pair, cfg);
      verdict = rep.verdict;
      cls = rep.classification;
      const Json rj = to_json(rep);
      for (auto it = rj["verdict"].begin(); it != rj["verdict"].end(); ++it) result[it.key()] = it.value();
      for (auto it = rj.begin(); it != rj.end(); ++it) {
        if (it.key() != "verdict") result[it.key()] = it.value();
      }
      for (std::size_t d = 0; d < rep.probes.size(); ++d) {
        for (std::size_t i = 0; i < rep.probes[d].points.size(); ++i) {
          const auto& pt = rep.probes[d].points[i];
          prof.push_back({"probe", std::to_string(d), num(1.0 - pt.w.norm()), num(pt.normalized),
                          num(rep.probes[d].lower_bounds[i])});
        }
      }
      std::printf("consistency: %s\n", rep.consistent ? "CONSISTENT" : "INCONSISTENT");
    } else {
      verdict = classify(g, pair, cfg);
      cls = verdict.classification;
      const Json vj = to_json(verdict);
      for (auto it = vj.begin(); it != vj.end(); ++it) result[it.key()] = it.value();
    }
    result["seed"] = gl.seed;
    for (std::size_t k = 0; k < verdict.criterion.values.size(); ++k) {
      prof.push_back({"criterion", "", num(verdict.criterion.r_max[k]), num(verdict.criterion.values[k]), ""});
    }
    if (verdict.decay) {
      for (std::size_t k = 0; k < verdict.decay->radii.size(); ++k) {
        prof.push_back({"shell_sup", "", num(verdict.decay->radii[k]), num(verdict.decay->sups[k]), ""});
      }
    }
    std::printf("branch: %s  gamma = %.6g  criterion = %.6g (%s)%s\nclassification: %s\n", to_string(verdict.branch),
                verdict.gamma, verdict.criterion.last(), to_string(verdict.criterion.trend),
                verdict.constancy_flag ? "  constancy_flag" : "", to_string(cls));

    const Json config{{"g", g_text},       {"pair", to_json(pair)},         {"probe", probe},
                      {"quadrature", to_json(cfg.spec)}, {"probe_quadrature", to_json(cfg.probe_spec)},
                      {"schedule", schedule}, {"w_gaps", gaps},            {"growth_factor", growth_factor},
                      {"stable_tolerance", stable_tolerance},
                      {"kernel_power", kernel_power ? Json(*kernel_power) : Json()},
                      {"strict", gl.strict}, {"seed", gl.seed}};
    Output out(gl, "classify");
    out.write(config, result);
    out.table({"branch", "gamma", "criterion", "trend", "constancy_flag", "classification"},
              {{to_string(verdict.branch), num(verdict.gamma), num(verdict.criterion.last()),
                to_string(verdict.criterion.trend), verdict.constancy_flag ? "1" : "0", to_string(cls)}});
    out.profile({"series", "direction", "x", "value", "lower_bound"}, prof);
    out.timing(elapsed_ms(t0));
    if (gl.strict && verdict.criterion.trend == Trend::Divergent) return kExitDivergent;
    return 0;
  }
};

struct LatticeCmd {
  double eta = 0.5;
  double r_max = 0.99;
  std::size_t n = 1;
  int density = 4;
  std::size_t probes = 100000;

  int run(const Globals& g) const {
    const auto t0 = std::chrono::steady_clock::now();
    if (probes == 0) throw DomainError("lattice: --probes must be positive");
    Lattice lat = build_lattice(eta, r_max, n, density);
    lat.cert = verify_lattice(lat, probes, g.seed);
    const double predicted = n == 1 ? predicted_node_count(eta, r_max) : 0.0;
    Json result = to_json(lat);
    if (n == 1) result["predicted_node_count"] = predicted;
    const Json config{{"eta", eta}, {"r_max", r_max}, {"n", n}, {"density", density},
                      {"probes", probes}, {"seed", g.seed}};
    Output out(g, "lattice");
    out.write(config, result);
    out.table({"nodes", "predicted", "verified", "covering", "separation", "disjoint", "overlap_max", "min_separation"},
              {{std::to_string(lat.nodes.size()), n == 1 ? num(predicted) : "", lat.cert.verified ? "1" : "0",
                lat.cert.covering_ok ? "1" : "0", lat.cert.separation_ok ? "1" : "0", lat.cert.disjoint_ok ? "1" : "0",
                std::to_string(lat.cert.overlap_max), num(lat.cert.min_separation)}});
    std::vector<std::vector<std::string>> prof;
    std::vector<std::string> header{"index"};
    for (std::size_t k = 0; k < n; ++k) {
      header.push_back("re" + std::to_string(k + 1));
      header.push_back("im" + std::to_string(k + 1));
    }
    for (std::size_t i = 0; i < lat.nodes.size(); ++i) {
      std::vector<std::string> row{std::to_string(i)};
      for (const auto& c : lat.nodes[i].coords()) {
        row.push_back(num(c.real()));
        row.push_back(num(c.imag()));
      }
      prof.push_back(std::move(row));
    }
    out.profile(header, prof);
    out.timing(elapsed_ms(t0));
    std::printf("%zu nodes, %s (overlap_max %d, min separation %.6g)\n", lat.nodes.size(),
                lat.cert.verified ? "certified" : "NOT certified", lat.cert.overlap_max, lat.cert.min_separation);
    return lat.cert.verified ? 0 : kExitFailure;
  }
};

struct KhinchineCmd {
  std::string c_text;
  double p = 2.0;
  std::size_t samples = 1 << 20;

  int run(const Globals& g) const {
    const auto t0 = std::chrono::steady_clock::now();
    if (!(p > 0.0)) throw DomainError("khinchine: p must be positive");
    CVec c;
    std::stringstream ss(c_text);
    for (std::string item; std::getline(ss, item, ',');) {
      const HoloFunction h = parse_symbol(item, 1);
      if (!h.is_polynomial() || h.polynomial_part().degree() != 0) throw DomainError("khinchine: --c must list constants");
      c.push_back(h.polynomial_part().constant_term());
    }
    if (c.empty()) throw DomainError("khinchine: --c must not be empty");
    const KhinchineResult r = khinchine_integral(c, p, samples, g.seed);
    const double ratio = khinchine_ratio(c, p);
    const Json result{{"value", r.value}, {"std_error", r.std_error}, {"exact", r.exact},
                      {"patterns", r.patterns}, {"ratio", ratio}};
    const Json config{{"c", to_json(c)}, {"p", p}, {"mc_samples", samples}, {"seed", g.seed}};
    Output out(g, "khinchine");
    out.write(config, result);
    out.table({"p", "m", "value", "std_error", "exact", "ratio"},
              {{num(p), std::to_string(c.size()), num(r.value), num(r.std_error), r.exact ? "1" : "0", num(ratio)}});
    out.profile({"j", "re", "im"}, [&] {
      std::vector<std::vector<std::string>> rows;
      for (std::size_t j = 0; j < c.size(); ++j) rows.push_back({std::to_string(j), num(c[j].real()), num(c[j].imag())});
      return rows;
    }());
    out.timing(elapsed_ms(t0));
    std::printf("%.12g\n", r.value);
    return 0;
  }
};

struct ReproCmd {
  bool all = false;
  std::vector<int> criteria;

  int run(const Globals& g) const {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<int> ids = criteria;
    if (all || ids.empty()) {
      ids.clear();
      for (int k = 1; k <= kCriterionCount; ++k) ids.push_back(k);
    }
    for (int id : ids) criterion_name(id);
    AcceptanceOptions opts;
    opts.seed = g.seed;
    bool ok = true;
    Json results = Json::array();
    Json seconds = Json::object();
    std::vector<std::vector<std::string>> table;
    for (int id : ids) {
      const CriterionResult r = run_criterion(id, opts);
      std::printf("%s\n", format_line(r).c_str());
      std::fflush(stdout);
      ok = ok && r.passed;
      results.push_back({{"id", r.id}, {"name", r.name}, {"passed", r.passed}, {"detail", r.detail}, {"data", r.data}});
      seconds[std::to_string(r.id)] = r.seconds;
      table.push_back({std::to_string(r.id), r.name, r.passed ? "PASS" : "FAIL", r.detail});
    }
    const Json config{{"criteria", ids}, {"seed", g.seed}};
    Output out(g, "repro");
    out.write(config, Json{{"all_passed", ok}, {"criteria", results}});
    out.table({"id", "name", "status", "detail"}, table);
    out.profile({"id", "name", "status"}, [&] {
      std::vector<std::vector<std::string>> rows;
      for (const auto& t : table) rows.push_back({t[0], t[1], t[2]});
      return rows;
    }());
    out.timing(elapsed_ms(t0), Json{{"criterion_seconds", seconds}});
    std::printf("%s\n", ok ? "all criteria passed" : "some criteria FAILED");
    return ok ? 0 : kExitFailure;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Weighted Bergman spaces, Riemann-Stieltjes operators and their boundedness criteria"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI configuration file (flags override file values)");
  Globals g;
  app.add_option("--threads", g.threads, "worker threads (default BERGMAN_LAB_THREADS or all cores)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--out", g.out, "output directory");
  app.add_flag("--strict", g.strict, "exit 3 when a divergence is detected");
  app.add_option("--seed", g.seed, "seed for Monte Carlo and random probes");

  NormCmd norm;
  auto* c_norm = app.add_subcommand("norm", "A^p_alpha norm of a function");
  c_norm->add_option("--f", norm.f, "function, e.g. \"z^5\" or \"pow(0.5; 3)\"");
  c_norm->add_option("--n", norm.n, "dimension")->check(CLI::PositiveNumber);
  c_norm->add_option("--p", norm.p, "exponent p > 0");
  c_norm->add_option("--alpha", norm.alpha, "weight alpha > -1");
  c_norm->add_flag("--equivalent", norm.equivalent, "also compute the derivative norm and the ratio");
  c_norm->add_flag("--check-divergence", norm.check_divergence, "diagnose the r_max schedule");
  norm.quad.add(c_norm);

  ClassifyCmd cls;
  auto* c_cls = app.add_subcommand("classify", "Boundedness and compactness of T_g : A^p_alpha -> A^q_beta");
  c_cls->add_option("--g", cls.g_text, "symbol, e.g. \"ces()\" or \"pow(1; 0.5)\"")->required();
  c_cls->add_option("--n", cls.n, "dimension")->check(CLI::PositiveNumber);
  c_cls->add_option("--p", cls.p, "source exponent");
  c_cls->add_option("--q", cls.q, "target exponent");
  c_cls->add_option("--alpha", cls.alpha, "source weight");
  c_cls->add_option("--beta", cls.beta, "target weight");
  c_cls->add_flag("--probe", cls.probe, "cross-check with kernel probes");
  c_cls->add_option("--kernel-power", cls.kernel_power, "m for the p <= 1 kernels");
  c_cls->add_option("--schedule", cls.schedule, "increasing r_max schedule")->delimiter(',');
  c_cls->add_option("--w-gaps", cls.gaps, "decreasing 1 - |w| values")->delimiter(',');
  c_cls->add_option("--growth-factor", cls.growth_factor, "divergence threshold");
  c_cls->add_option("--stable-tolerance", cls.stable_tolerance, "relative change counted as stable");
  cls.quad.add(c_cls);

  LatticeCmd lat;
  auto* c_lat = app.add_subcommand("lattice", "Build and certify an eta-lattice");
  c_lat->add_option("--eta", lat.eta, "lattice parameter");
  c_lat->add_option("--rmax", lat.r_max, "truncation radius");
  c_lat->add_option("--n", lat.n, "dimension")->check(CLI::PositiveNumber);
  c_lat->add_option("--density", lat.density, "candidate density");
  c_lat->add_option("--probes", lat.probes, "certification probes");

  KhinchineCmd kh;
  auto* c_kh = app.add_subcommand("khinchine", "L^p average of a Rademacher sum");
  c_kh->add_option("--c", kh.c_text, "comma separated coefficients, e.g. 3,4 or 1+2i,0.5")->required();
  c_kh->add_option("--p", kh.p, "exponent p > 0");
  c_kh->add_option("--samples", kh.samples, "Monte Carlo patterns when m > 24");

  ReproCmd repro;
  auto* c_rep = app.add_subcommand("repro", "Run the acceptance suite");
  c_rep->add_flag("--all", repro.all, "run every criterion");
  c_rep->add_option("--criterion", repro.criteria, "criterion ids")->delimiter(',');

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitValidation;
  }

  try {
    if (g.threads > 0) set_thread_count(g.threads);
    if (*c_norm) return norm.run(g);
    if (*c_cls) return cls.run(g);
    if (*c_lat) return lat.run(g);
    if (*c_kh) return kh.run(g);
    if (*c_rep) return repro.run(g);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const DomainError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitFailure;
  }
  return kExitFailure;
}
