// Holomorphic functions on B_n with exact radial derivatives, the
// Riemann-Stieltjes operator T_g f(z) = int_0^1 f(tz) Rg(tz) dt/t, and the
// reproducing-type kernels used as test functions.
#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "bergman/geometry.hpp"
#include "bergman/params.hpp"
#include "bergman/polynomial.hpp"
#include "bergman/ray.hpp"

namespace bergman {

/// coef * <z,base>^u_power * (1 - <z,base>)^(-s).
struct PowerTerm {
  Complex coef{1.0, 0.0};
  CVec base;
  std::uint32_t u_power = 0;
  double s = 1.0;
};

/// coef * (-log(1 - <z,base>)).
struct LogTerm {
  Complex coef{1.0, 0.0};
  CVec base;
};

/// Finite sum of a polynomial, power kernels and log kernels. Kernel bases
/// satisfy |base| <= 1, so every term is holomorphic on the open ball; the
/// principal branch is used since Re(1 - <z,base>) > 0 there.
class HoloFunction {
 public:
  explicit HoloFunction(std::size_t n = 1);
  HoloFunction(Polynomial p);  // NOLINT: polynomials are holomorphic functions

  static HoloFunction constant(std::size_t n, Complex c);
  /// -log(1 - <z,b>) for |b| <= 1 (b may lie on the sphere).
  static HoloFunction log_kernel(CVec b);
  /// (1 - <z,w>)^(-s) for |w| <= 1 and s > 0.
  static HoloFunction power_kernel(CVec w, double s);
  /// General sum; every base is validated as for the kernels.
  static HoloFunction from_terms(Polynomial p, std::vector<PowerTerm> powers, std::vector<LogTerm> logs);

  std::size_t dim() const { return poly_.dim(); }
  const Polynomial& polynomial_part() const { return poly_; }
  const std::vector<PowerTerm>& power_terms() const { return powers_; }
  const std::vector<LogTerm>& log_terms() const { return logs_; }

  bool is_polynomial() const { return powers_.empty() && logs_.empty(); }
  /// True when the function is a constant (closed terms with zero coefficient are ignored).
  bool is_constant() const;

  HoloFunction& operator+=(const HoloFunction& other);
  HoloFunction& operator*=(Complex s);
  friend HoloFunction operator+(HoloFunction a, const HoloFunction& b) { return a += b; }
  friend HoloFunction operator-(HoloFunction a, const HoloFunction& b) { return a += b * Complex{-1.0, 0.0}; }
  friend HoloFunction operator*(HoloFunction a, Complex s) { return a *= s; }
  friend HoloFunction operator*(Complex s, HoloFunction a) { return a *= s; }

  /// Unchecked evaluation for hot loops; z must be interior.
  Complex eval(std::span<const Complex> z) const;
  Complex operator()(const Point& z) const;

  /// Values along one ray, using 1 - r for accuracy near the sphere.
  void eval_ray(std::span<const Complex> dir, std::span<const double> radii,
                std::span<const double> one_minus, std::span<Complex> out) const;

  /// Rh = sum_j z_j dh/dz_j, in closed form.
  HoloFunction radial_derivative() const;

  /// Taylor polynomial at 0 through total degree `degree`.
  Polynomial taylor(std::uint32_t degree) const;

  /// Normalized bases of closed terms with |base| >= 1/2.
  std::vector<CVec> singular_directions() const;

  std::string describe() const;

 private:
  Polynomial poly_;
  std::vector<PowerTerm> powers_;
  std::vector<LogTerm> logs_;
};

/// RayFunction adapter over a HoloFunction (holds a reference).
class HoloRay final : public RayFunction {
 public:
  explicit HoloRay(const HoloFunction& h) : h_(h) {}
  std::size_t dim() const override { return h_.dim(); }
  void eval_ray(std::span<const Complex> dir, const RadialSamples& samples,
                std::span<Complex> out) const override {
    h_.eval_ray(dir, samples.radii, samples.one_minus, out);
  }
  std::vector<CVec> focus_directions() const override { return h_.singular_directions(); }

 private:
  const HoloFunction& h_;
};

HoloFunction radial_derivative(const HoloFunction& h);

// ---------------------------------------------------------------------------
// T_g

/// Exact T_g f for polynomials: every product term a z^m * (|k| b z^k) is
/// integrated as t^(|m|+|k|-1), giving the weight |k| / (|m|+|k|).
Polynomial apply_tg_exact(const Polynomial& f, const Polynomial& g);

/// Truncated-expansion path: Taylor polynomials of f and g through `degree`,
/// then the exact operator; coefficients are exact through `degree`.
Polynomial apply_tg_series(const HoloFunction& f, const HoloFunction& g, std::uint32_t degree);

struct TgQuadratureOptions {
  int initial_nodes = 64;
  int max_nodes = 4096;
  double tolerance = 1e-10;
};

/// Quadrature-mode T_g f: pointwise Gauss-Legendre in t with node doubling,
/// and running panel integrals along rays.
class TgEvaluator final : public RayFunction {
 public:
  TgEvaluator(HoloFunction f, const HoloFunction& g, TgQuadratureOptions opts = {});

  struct Pointwise {
    Complex value;
    double last_change;  // |I_N - I_{N/2}| at acceptance
    int nodes;
  };

  Complex operator()(const Point& z) const { return evaluate(z).value; }
  Pointwise evaluate(const Point& z) const;

  std::size_t dim() const override { return f_.dim(); }
  void eval_ray(std::span<const Complex> dir, const RadialSamples& samples,
                std::span<Complex> out) const override;
  std::vector<CVec> focus_directions() const override;

  const HoloFunction& f() const { return f_; }
  const HoloFunction& rg() const { return rg_; }

 private:
  HoloFunction f_;
  HoloFunction rg_;
  TgQuadratureOptions opts_;
};

enum class TgMode { Exact, Quadrature };

/// Exact mode needs polynomial f and g (DomainError otherwise).
std::variant<HoloFunction, TgEvaluator> apply_tg(const HoloFunction& f, const HoloFunction& g, TgMode mode);

// ---------------------------------------------------------------------------
// Kernels

/// K(w,z) = (1 - <z,w>)^(-(n+1+alpha)).
HoloFunction kernel_K(const Point& w, const SpaceParams& space);

/// K_p(w,z) = (1 - <z,w>)^(-m/p); requires the integer m > n+1+alpha.
HoloFunction kernel_Kp(const Point& w, const SpaceParams& space, int m);

/// Smallest admissible m (least integer > n+1+alpha) plus one.
int default_kernel_power(const SpaceParams& space);

}  // namespace bergman
