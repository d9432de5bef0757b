#include <doctest.h>

#include <cmath>
#include <numbers>

#include "bergman/holo.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

HoloFunction z1() { return HoloFunction(Polynomial::monomial(MultiIndex({1u}))); }

// Central difference of t -> h(t z) at t = 1, i.e. Rh(z).
Complex radial_fd(const HoloFunction& h, const Point& z) {
  const double e = 1e-5;
  CVec a = z.coords(), b = z.coords();
  for (auto& c : a) c *= 1.0 + e;
  for (auto& c : b) c *= 1.0 - e;
  return (h.eval(a) - h.eval(b)) / (2.0 * e);
}

}  // namespace

TEST_CASE("kernels at w = 0 are the constant 1") {
  const SpaceParams s{2, 2.0, 0.5};
  const HoloFunction K = kernel_K(Point::origin(2), s);
  const HoloFunction Kp = kernel_Kp(Point::origin(2), s, 4);
  const Point z{0.3, Complex{0.1, 0.4}};
  CHECK(std::abs(K(z) - 1.0) < 1e-15);
  CHECK(std::abs(Kp(z) - 1.0) < 1e-15);
}

TEST_CASE("kernel exponents and admissibility") {
  const SpaceParams s{1, 0.5, 0.0};
  CHECK(default_kernel_power(s) == 4);
  CHECK_THROWS_AS(kernel_Kp(Point{0.5}, s, 2), DomainError);
  const HoloFunction Kp = kernel_Kp(Point{0.5}, s, 3);
  REQUIRE(Kp.power_terms().size() == 1);
  CHECK(Kp.power_terms()[0].s == doctest::Approx(6.0));
  CHECK(kernel_K(Point{0.5, 0.0}, SpaceParams{2, 2.0, 1.0}).power_terms()[0].s == doctest::Approx(4.0));
}

TEST_CASE("closed-form radial derivatives match finite differences") {
  std::mt19937_64 rng(31);
  const HoloFunction fs[] = {HoloFunction::log_kernel({0.6, Complex{0.0, 0.8}}),
                             HoloFunction::power_kernel({0.3, 0.4}, 2.5),
                             HoloFunction::power_kernel({0.0, 1.0}, 0.5) * Complex{2.0, -1.0}};
  for (const auto& h : fs) {
    const HoloFunction rh = h.radial_derivative();
    for (int k = 0; k < 20; ++k) {
      const Point z = testing::random_point(rng, 2, 0.8);
      CHECK(std::abs(rh(z) - radial_fd(h, z)) < 1e-6 * (1.0 + std::abs(rh(z))));
    }
  }
}

TEST_CASE("Taylor expansion of the log kernel") {
  const Polynomial t = HoloFunction::log_kernel({1.0}).taylor(6);
  for (std::uint32_t k = 1; k <= 6; ++k) CHECK(std::abs(t.coefficient(MultiIndex({k})) - 1.0 / k) < 1e-15);
  CHECK(t.constant_term() == Complex{0.0, 0.0});
}

TEST_CASE("Taylor expansion of a fractional power kernel") {
  // (1-z)^(-1/2) = sum binom(2k,k) (z/4)^k
  const Polynomial t = HoloFunction::power_kernel({1.0}, 0.5).taylor(8);
  double c = 1.0;
  for (std::uint32_t k = 0; k <= 8; ++k) {
    CHECK(std::abs(t.coefficient(MultiIndex({k})) - c) < 1e-14);
    c *= (2.0 * k + 1.0) / (2.0 * k + 2.0);
  }
}

TEST_CASE("T_g examples") {
  // T_z z^k = z^(k+1)/(k+1)
  const Polynomial f = Polynomial::monomial(MultiIndex({3u}));
  const Polynomial t = apply_tg_exact(f, z1().polynomial_part());
  CHECK(t == Polynomial::monomial(MultiIndex({4u}), 0.25));
  // constant g gives 0
  CHECK(apply_tg_exact(f, Polynomial::constant(1, 5.0)).is_zero());
}

TEST_CASE("property: R(T_g f) = f Rg and T_g f(0) = 0") {
  std::mt19937_64 rng(32);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = k % 2 + 1;
    const Polynomial f = testing::random_poly(rng, n, 30, 20);
    const Polynomial g = testing::random_poly(rng, n, 30, 20);
    const Polynomial t = apply_tg_exact(f, g);
    CHECK(max_coefficient_difference(t.radial_derivative(), f * g.radial_derivative()) < 1e-12);
    CHECK(t.constant_term() == Complex{0.0, 0.0});
  }
}

TEST_CASE("property: T_g is bilinear") {
  std::mt19937_64 rng(33);
  for (int k = 0; k < 50; ++k) {
    const Polynomial f1 = testing::random_poly(rng, 2, 10, 5), f2 = testing::random_poly(rng, 2, 10, 5);
    const Polynomial g1 = testing::random_poly(rng, 2, 10, 5), g2 = testing::random_poly(rng, 2, 10, 5);
    const Complex a = testing::unit_square(rng);
    CHECK(max_coefficient_difference(apply_tg_exact(f1 * a + f2, g1),
                                     apply_tg_exact(f1, g1) * a + apply_tg_exact(f2, g1)) < 1e-13);
    CHECK(max_coefficient_difference(apply_tg_exact(f1, g1 * a + g2),
                                     apply_tg_exact(f1, g1) * a + apply_tg_exact(f1, g2)) < 1e-13);
    const Polynomial g_shift = g1 + Polynomial::constant(2, 3.0);
    CHECK(apply_tg_exact(f1, g1) == apply_tg_exact(f1, g_shift));
  }
}

TEST_CASE("T_g 1 = g - g(0)") {
  std::mt19937_64 rng(34);
  for (int k = 0; k < 20; ++k) {
    const Polynomial g = testing::random_poly(rng, 2, 20, 10);
    CHECK(apply_tg_exact(Polynomial::constant(2, 1.0), g) == g - Polynomial::constant(2, g.constant_term()));
  }
}

TEST_CASE("Cesaro coefficient law on the series path") {
  std::mt19937_64 rng(35);
  const Polynomial f = testing::random_poly(rng, 1, 15, 10);
  const Polynomial t = apply_tg_series(f, HoloFunction::log_kernel({1.0}), 40);
  Complex partial{0.0, 0.0};
  for (std::uint32_t N = 0; N < 40; ++N) {
    partial += f.coefficient(MultiIndex({N}));
    CHECK(std::abs(t.coefficient(MultiIndex({N + 1})) - partial / double(N + 1)) < 1e-14);
  }
}

TEST_CASE("quadrature T_g agrees with the exact operator") {
  std::mt19937_64 rng(36);
  const Polynomial f = testing::random_poly(rng, 2, 12, 6);
  const Polynomial g = testing::random_poly(rng, 2, 12, 6);
  const Polynomial exact = apply_tg_exact(f, g);
  const TgEvaluator quad{HoloFunction(f), HoloFunction(g)};
  for (int k = 0; k < 20; ++k) {
    const Point z = testing::random_point(rng, 2, 0.95);
    CHECK(std::abs(quad(z) - exact(z)) < 1e-10);
  }
  CHECK(std::get<HoloFunction>(apply_tg(HoloFunction(f), HoloFunction(g), TgMode::Exact)).polynomial_part() == exact);
  CHECK_THROWS_AS(apply_tg(HoloFunction::log_kernel({0.5, 0.5}), HoloFunction(g), TgMode::Exact), DomainError);
}

TEST_CASE("quadrature T_g of a kernel against its closed form") {
  // T_z (1-wz)^(-2) = z / (1 - wz) for real w
  const double w = 0.9;
  const TgEvaluator t(HoloFunction::power_kernel({w}, 2.0), z1());
  for (double r : {0.1, 0.5, 0.95, 0.999}) {
    const Point z{std::polar(r, 0.3)};
    CHECK(std::abs(t(z) - z[0] / (1.0 - w * z[0])) < 1e-9);
  }
}

TEST_CASE("ray evaluation matches pointwise evaluation") {
  const HoloFunction h = HoloFunction(Polynomial::monomial(MultiIndex({2u, 1u}), Complex{0, 1})) +
                         HoloFunction::log_kernel({0.6, 0.8}) + HoloFunction::power_kernel({0.3, Complex{0, 0.3}}, 1.5);
  const CVec dir{Complex{0.6, 0.0}, Complex{0.0, 0.8}};
  const std::vector<double> radii{0.0, 0.3, 0.9, 0.999};
  std::vector<double> om;
  for (double r : radii) om.push_back(1.0 - r);
  CVec out(radii.size());
  h.eval_ray(dir, radii, om, out);
  for (std::size_t i = 0; i < radii.size(); ++i) {
    CHECK(std::abs(out[i] - h(Point::along(dir, radii[i]))) < 1e-12 * (1.0 + std::abs(out[i])));
  }
}

TEST_CASE("closed terms need |base| <= 1") {
  CHECK_THROWS_AS(HoloFunction::log_kernel({1.1}), DomainError);
  CHECK_THROWS_AS(HoloFunction::power_kernel({0.5}, -1.0), DomainError);
  CHECK_NOTHROW(HoloFunction::log_kernel({1.0}));
}
