#include "bergman/holo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace bergman {

namespace {

constexpr double kBaseSlack = 1e-12;

void check_base(const CVec& b, const char* what) {
  if (b.empty()) throw DomainError(std::string(what) + ": empty base point");
  for (const auto& c : b) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DomainError(std::string(what) + ": non-finite base point");
    }
  }
  if (norm(b) > 1.0 + kBaseSlack) {
    std::ostringstream os;
    os << what << ": base point must satisfy |b| <= 1, got " << norm(b);
    throw DomainError(os.str());
  }
}

bool is_small_integer(double s) { return s == std::floor(s) && s >= 0.0 && s <= 64.0; }

Complex ipow(Complex x, unsigned k) {
  Complex r{1.0, 0.0};
  while (k != 0) {
    if (k & 1u) r *= x;
    x *= x;
    k >>= 1u;
  }
  return r;
}

// (1-u)^(-s) from om = 1-u, principal branch.
Complex inv_power(Complex om, double s) {
  if (is_small_integer(s)) return 1.0 / ipow(om, static_cast<unsigned>(s));
  return std::exp(-s * std::log(om));
}

Complex power_term_value(const PowerTerm& t, Complex u, Complex om) {
  Complex v = t.coef * inv_power(om, t.s);
  if (t.u_power != 0) v *= ipow(u, t.u_power);
  return v;
}

std::string fmt_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string fmt_complex(Complex c) {
  if (c.imag() == 0.0) return fmt_double(c.real());
  if (c.real() == 0.0) return fmt_double(c.imag()) + "i";
  std::string im = fmt_double(std::abs(c.imag())) + "i";
  return "(" + fmt_double(c.real()) + (c.imag() < 0 ? "-" : "+") + im + ")";
}

std::string fmt_point(const CVec& b) {
  std::string s;
  for (std::size_t k = 0; k < b.size(); ++k) {
    if (k) s += ",";
    s += fmt_complex(b[k]);
  }
  return s;
}

}  // namespace

HoloFunction::HoloFunction(std::size_t n) : poly_(n) {}

HoloFunction::HoloFunction(Polynomial p) : poly_(std::move(p)) {}

HoloFunction HoloFunction::constant(std::size_t n, Complex c) { return HoloFunction(Polynomial::constant(n, c)); }

HoloFunction HoloFunction::log_kernel(CVec b) {
  check_base(b, "log_kernel");
  HoloFunction h(b.size());
  h.logs_.push_back({Complex{1.0, 0.0}, std::move(b)});
  return h;
}

HoloFunction HoloFunction::power_kernel(CVec w, double s) {
  check_base(w, "power_kernel");
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("power_kernel: exponent s must be positive");
  HoloFunction h(w.size());
  h.powers_.push_back({Complex{1.0, 0.0}, std::move(w), 0, s});
  return h;
}

HoloFunction HoloFunction::from_terms(Polynomial p, std::vector<PowerTerm> powers, std::vector<LogTerm> logs) {
  HoloFunction h(std::move(p));
  for (auto& t : powers) {
    require_same_dim(h.dim(), t.base.size(), "from_terms");
    check_base(t.base, "from_terms");
    if (!(t.s > 0.0) || !std::isfinite(t.s)) throw DomainError("from_terms: exponent s must be positive");
    if (t.coef != Complex{0.0, 0.0}) h.powers_.push_back(std::move(t));
  }
  for (auto& t : logs) {
    require_same_dim(h.dim(), t.base.size(), "from_terms");
    check_base(t.base, "from_terms");
    if (t.coef != Complex{0.0, 0.0}) h.logs_.push_back(std::move(t));
  }
  return h;
}

bool HoloFunction::is_constant() const { return is_polynomial() && poly_.degree() == 0; }

HoloFunction& HoloFunction::operator+=(const HoloFunction& other) {
  require_same_dim(dim(), other.dim(), "HoloFunction +");
  poly_ += other.poly_;
  powers_.insert(powers_.end(), other.powers_.begin(), other.powers_.end());
  logs_.insert(logs_.end(), other.logs_.begin(), other.logs_.end());
  return *this;
}

HoloFunction& HoloFunction::operator*=(Complex s) {
  poly_ *= s;
  if (s == Complex{0.0, 0.0}) {
    powers_.clear();
    logs_.clear();
    return *this;
  }
  for (auto& t : powers_) t.coef *= s;
  for (auto& t : logs_) t.coef *= s;
  return *this;
}

Complex HoloFunction::eval(std::span<const Complex> z) const {
  Complex v = poly_.eval(z);
  for (const auto& t : powers_) {
    const Complex u = inner(z, t.base);
    v += power_term_value(t, u, 1.0 - u);
  }
  for (const auto& t : logs_) v -= t.coef * std::log(1.0 - inner(z, t.base));
  return v;
}

Complex HoloFunction::operator()(const Point& z) const {
  require_same_dim(dim(), z.dim(), "HoloFunction");
  return eval(z.span());
}

void HoloFunction::eval_ray(std::span<const Complex> dir, std::span<const double> radii,
                            std::span<const double> one_minus, std::span<Complex> out) const {
  require_same_dim(dim(), dir.size(), "HoloFunction::eval_ray");
  const std::size_t m = radii.size();
  // Polynomial part: p(r dir) = sum_k r^k p_k(dir).
  const std::uint32_t deg = poly_.degree();
  std::vector<Complex> hom(deg + 1, Complex{0.0, 0.0});
  if (!poly_.is_zero()) {
    if (dim() == 1) {
      // p_k(dir) = c_k dir^k
      for (const auto& [idx, c] : poly_.terms()) hom[idx.total_degree()] = c * ipow(dir[0], idx.total_degree());
    } else {
      std::vector<Complex> pw(dim() * (deg + 1));
      for (std::size_t k = 0; k < dim(); ++k) {
        pw[k * (deg + 1)] = 1.0;
        for (std::uint32_t e = 1; e <= deg; ++e) pw[k * (deg + 1) + e] = pw[k * (deg + 1) + e - 1] * dir[k];
      }
      for (const auto& [idx, c] : poly_.terms()) {
        Complex mono = c;
        for (std::size_t k = 0; k < dim(); ++k) {
          if (idx[k] != 0) mono *= pw[k * (deg + 1) + idx[k]];
        }
        hom[idx.total_degree()] += mono;
      }
    }
  }
  for (std::size_t i = 0; i < m; ++i) {
    Complex acc = hom[deg];
    for (std::uint32_t k = deg; k-- > 0;) acc = acc * radii[i] + hom[k];
    out[i] = poly_.is_zero() ? Complex{0.0, 0.0} : acc;
  }
  for (const auto& t : powers_) {
    const Complex c = inner(dir, t.base);
    const Complex one_minus_c = 1.0 - c;
    for (std::size_t i = 0; i < m; ++i) {
      const double r = radii[i];
      const Complex u = r * c;
      const Complex om = one_minus[i] + r * one_minus_c;
      out[i] += power_term_value(t, u, om);
    }
  }
  for (const auto& t : logs_) {
    const Complex c = inner(dir, t.base);
    const Complex one_minus_c = 1.0 - c;
    for (std::size_t i = 0; i < m; ++i) {
      const Complex om = one_minus[i] + radii[i] * one_minus_c;
      out[i] -= t.coef * std::log(om);
    }
  }
}

HoloFunction HoloFunction::radial_derivative() const {
  HoloFunction out(poly_.radial_derivative());
  for (const auto& t : powers_) {
    // R[u^j (1-u)^-s] = j u^j (1-u)^-s + s u^(j+1) (1-u)^(-s-1), since Ru = u.
    if (t.u_power != 0) out.powers_.push_back({t.coef * static_cast<double>(t.u_power), t.base, t.u_power, t.s});
    out.powers_.push_back({t.coef * t.s, t.base, t.u_power + 1, t.s + 1.0});
  }
  for (const auto& t : logs_) out.powers_.push_back({t.coef, t.base, 1, 1.0});
  return out;
}

HoloFunction radial_derivative(const HoloFunction& h) { return h.radial_derivative(); }

Polynomial HoloFunction::taylor(std::uint32_t degree) const {
  Polynomial out = poly_.truncated(degree);
  auto powers_of_u = [&](const CVec& base) {
    std::vector<Polynomial> u;
    u.push_back(Polynomial::constant(dim(), 1.0));
    const Polynomial lin = Polynomial::linear_form(base);
    for (std::uint32_t k = 1; k <= degree; ++k) u.push_back(u.back().times(lin, degree));
    return u;
  };
  for (const auto& t : powers_) {
    const auto u = powers_of_u(t.base);
    // (1-u)^-s = sum_k (s)_k / k! u^k
    double a = 1.0;
    for (std::uint32_t k = 0; t.u_power + k <= degree; ++k) {
      if (k > 0) a *= (t.s + k - 1.0) / k;
      out += u[t.u_power + k] * (t.coef * a);
    }
  }
  for (const auto& t : logs_) {
    const auto u = powers_of_u(t.base);
    for (std::uint32_t k = 1; k <= degree; ++k) out += u[k] * (t.coef / static_cast<double>(k));
  }
  return out;
}

std::vector<CVec> HoloFunction::singular_directions() const {
  std::vector<CVec> dirs;
  auto add = [&](const CVec& b) {
    const double r = norm(b);
    if (r < 0.5) return;
    CVec d(b);
    for (auto& c : d) c /= r;
    for (const auto& e : dirs) {
      double diff = 0.0;
      for (std::size_t k = 0; k < d.size(); ++k) diff += std::norm(d[k] - e[k]);
      if (diff < 1e-24) return;
    }
    dirs.push_back(std::move(d));
  };
  for (const auto& t : powers_) add(t.base);
  for (const auto& t : logs_) add(t.base);
  return dirs;
}

std::string HoloFunction::describe() const {
  std::string s;
  auto append = [&](const std::string& term) {
    if (!s.empty()) s += " + ";
    s += term;
  };
  for (const auto& [idx, c] : poly_.terms()) {
    std::string t = fmt_complex(c);
    for (std::size_t k = 0; k < idx.dim(); ++k) {
      if (idx[k] == 0) continue;
      t += "*z" + std::to_string(k + 1);
      if (idx[k] > 1) t += "^" + std::to_string(idx[k]);
    }
    append(t);
  }
  for (const auto& t : powers_) {
    std::string term = fmt_complex(t.coef);
    if (t.u_power) term += "*<z," + fmt_point(t.base) + ">^" + std::to_string(t.u_power);
    term += "*pow(" + fmt_point(t.base) + "; " + fmt_double(t.s) + ")";
    append(term);
  }
  for (const auto& t : logs_) append(fmt_complex(t.coef) + "*ces(" + fmt_point(t.base) + ")");
  return s.empty() ? "0" : s;
}

// ---------------------------------------------------------------------------

Polynomial apply_tg_exact(const Polynomial& f, const Polynomial& g) {
  require_same_dim(f.dim(), g.dim(), "apply_tg");
  Polynomial out(f.dim());
  for (const auto& [m, a] : f.terms()) {
    for (const auto& [k, b] : g.terms()) {
      if (k.total_degree() == 0) continue;
      const double weight = static_cast<double>(k.total_degree()) /
                            static_cast<double>(m.total_degree() + k.total_degree());
      out.add_term(m + k, a * b * weight);
    }
  }
  return out;
}

Polynomial apply_tg_series(const HoloFunction& f, const HoloFunction& g, std::uint32_t degree) {
  const Polynomial ft = f.taylor(degree);
  const Polynomial gt = g.taylor(degree);
  return apply_tg_exact(ft, gt).truncated(degree);
}

TgEvaluator::TgEvaluator(HoloFunction f, const HoloFunction& g, TgQuadratureOptions opts)
    : f_(std::move(f)), rg_(g.radial_derivative()), opts_(opts) {
  require_same_dim(f_.dim(), rg_.dim(), "TgEvaluator");
  if (opts_.initial_nodes < 1 || opts_.max_nodes < opts_.initial_nodes) {
    throw DomainError("TgEvaluator: invalid node counts");
  }
}

TgEvaluator::Pointwise TgEvaluator::evaluate(const Point& z) const {
  require_same_dim(dim(), z.dim(), "TgEvaluator");
  CVec tz(z.dim());
  auto integrand = [&](double t) {
    for (std::size_t k = 0; k < tz.size(); ++k) tz[k] = t * z[k];
    return f_.eval(tz) * rg_.eval(tz) / t;
  };
  auto rule_sum = [&](int nodes) {
    const auto rule = gauss_legendre(nodes);
    Complex s{0.0, 0.0};
    for (int i = 0; i < nodes; ++i) s += rule->weights[i] * integrand(0.5 * (1.0 + rule->nodes[i]));
    return 0.5 * s;
  };
  int nodes = opts_.initial_nodes;
  Complex prev = rule_sum(nodes);
  double change = INFINITY;
  while (nodes * 2 <= opts_.max_nodes) {
    nodes *= 2;
    const Complex next = rule_sum(nodes);
    change = std::abs(next - prev);
    prev = next;
    if (change < opts_.tolerance) break;
  }
  return {prev, change, nodes};
}

void TgEvaluator::eval_ray(std::span<const Complex> dir, const RadialSamples& samples,
                           std::span<Complex> out) const {
  const std::size_t m = samples.radii.size();
  CVec buf(dir.size());
  auto h_at = [&](double rho) {
    for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = rho * dir[k];
    return f_.eval(buf) * rg_.eval(buf) / rho;
  };
  const auto segment = gauss_legendre(16);
  auto integrate_segment = [&](double a, double b) {
    if (b <= a) return Complex{0.0, 0.0};
    return integrate_toward_one<Complex>(h_at, a, b, *segment);
  };

  if (samples.panels.empty() || samples.rule == nullptr) {
    Complex acc{0.0, 0.0};
    double prev = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
      acc += integrate_segment(prev, samples.radii[i]);
      prev = samples.radii[i];
      out[i] = acc;
    }
    return;
  }

  std::vector<Complex> fv(m), rv(m);
  f_.eval_ray(dir, samples.radii, samples.one_minus, fv);
  rg_.eval_ray(dir, samples.radii, samples.one_minus, rv);
  const GaussRule& rule = *samples.rule;
  const int order = rule.order;
  std::vector<Complex> h(static_cast<std::size_t>(order));
  Complex base = integrate_segment(0.0, samples.panels.front().a);
  double prev_end = samples.panels.front().a;
  for (const auto& panel : samples.panels) {
    base += integrate_segment(prev_end, panel.a);
    const double half = 0.5 * (panel.b - panel.a);
    Complex total{0.0, 0.0};
    for (int j = 0; j < order; ++j) {
      const std::size_t idx = panel.first + static_cast<std::size_t>(j);
      h[j] = fv[idx] * rv[idx] / samples.radii[idx];
      total += rule.weights[j] * h[j];
    }
    for (int i = 0; i < order; ++i) {
      Complex partial{0.0, 0.0};
      const double* row = &rule.integration[static_cast<std::size_t>(i) * order];
      for (int j = 0; j < order; ++j) partial += row[j] * h[j];
      out[panel.first + static_cast<std::size_t>(i)] = base + half * partial;
    }
    base += half * total;
    prev_end = panel.b;
  }
}

std::vector<CVec> TgEvaluator::focus_directions() const {
  auto dirs = f_.singular_directions();
  for (auto& d : rg_.singular_directions()) dirs.push_back(std::move(d));
  return dirs;
}

std::variant<HoloFunction, TgEvaluator> apply_tg(const HoloFunction& f, const HoloFunction& g, TgMode mode) {
  if (mode == TgMode::Exact) {
    if (!f.is_polynomial() || !g.is_polynomial()) {
      throw DomainError("apply_tg: exact mode requires polynomial f and g (use apply_tg_series or quadrature)");
    }
    return HoloFunction(apply_tg_exact(f.polynomial_part(), g.polynomial_part()));
  }
  return TgEvaluator(f, g);
}

// ---------------------------------------------------------------------------

HoloFunction kernel_K(const Point& w, const SpaceParams& space) {
  space.validate();
  require_same_dim(w.dim(), space.n, "kernel_K");
  return HoloFunction::power_kernel(w.coords(), space.critical());
}

HoloFunction kernel_Kp(const Point& w, const SpaceParams& space, int m) {
  space.validate();
  require_same_dim(w.dim(), space.n, "kernel_Kp");
  if (!(static_cast<double>(m) > space.critical())) {
    std::ostringstream os;
    os << "kernel_Kp: m = " << m << " must exceed n+1+alpha = " << space.critical();
    throw DomainError(os.str());
  }
  return HoloFunction::power_kernel(w.coords(), static_cast<double>(m) / space.p);
}

int default_kernel_power(const SpaceParams& space) {
  space.validate();
  return static_cast<int>(std::floor(space.critical())) + 2;
}

}  // namespace bergman
