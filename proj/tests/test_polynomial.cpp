#include <doctest.h>

#include "bergman/polynomial.hpp"
#include "support.hpp"

using namespace bergman;

namespace {
MultiIndex mi(std::initializer_list<std::uint32_t> e) { return MultiIndex(std::vector<std::uint32_t>(e)); }
}  // namespace

TEST_CASE("multi-index order is graded") {
  CHECK(mi({2, 0}) > mi({0, 1}));
  CHECK(mi({1, 1}) > mi({0, 2}));
  CHECK(mi({1, 2}).total_degree() == 3);
  CHECK(mi({1, 0}) + mi({0, 3}) == mi({1, 3}));
}

TEST_CASE("zero coefficients are never stored") {
  Polynomial p(2);
  p.add_term(mi({1, 0}), 2.0);
  p.add_term(mi({1, 0}), -2.0);
  CHECK(p.is_zero());
  CHECK(p.size() == 0);
  CHECK(p.degree() == 0);
  p.add_term(mi({0, 0}), 0.0);
  CHECK(p.is_zero());
}

TEST_CASE("radial derivative multiplies by the total degree") {
  const Polynomial p = Polynomial::monomial(mi({2, 3}), Complex{1, 1});
  CHECK(p.radial_derivative() == Polynomial::monomial(mi({2, 3}), Complex{5, 5}));
  CHECK(Polynomial::constant(2, 7.0).radial_derivative().is_zero());
}

TEST_CASE("linear form and evaluation") {
  const CVec b{Complex{0, 1}, 2.0};
  const Polynomial l = Polynomial::linear_form(b);
  const CVec z{3.0, Complex{1, 1}};
  CHECK(std::abs(l.eval(z) - inner(z, b)) < 1e-15);
}

TEST_CASE("property: arithmetic agrees with pointwise evaluation") {
  std::mt19937_64 rng(21);
  for (int k = 0; k < 100; ++k) {
    const std::size_t n = k % 2 + 1;
    const Polynomial a = testing::random_poly(rng, n, 12, 6);
    const Polynomial b = testing::random_poly(rng, n, 12, 6);
    const Point z = testing::random_point(rng, n, 0.9);
    CHECK(std::abs((a + b)(z) - (a(z) + b(z))) < 1e-12);
    CHECK(std::abs((a * b)(z) - a(z) * b(z)) < 1e-11);
    CHECK(std::abs((a - a)(z)) == 0.0);
    CHECK(a(Point::origin(n)) == a.constant_term());
    // homogeneous parts add up to the polynomial
    Polynomial sum(n);
    for (std::uint32_t d = 0; d <= a.degree(); ++d) sum += a.homogeneous_part(d);
    CHECK(sum == a);
    CHECK(a.times(b, 5) == (a * b).truncated(5));
  }
}

TEST_CASE("property: R is a derivation") {
  std::mt19937_64 rng(22);
  for (int k = 0; k < 50; ++k) {
    const Polynomial a = testing::random_poly(rng, 2, 10, 5);
    const Polynomial b = testing::random_poly(rng, 2, 10, 5);
    const Polynomial lhs = (a * b).radial_derivative();
    const Polynomial rhs = a.radial_derivative() * b + a * b.radial_derivative();
    CHECK(max_coefficient_difference(lhs, rhs) < 1e-12);
  }
}

TEST_CASE("dimension mismatch is rejected") {
  CHECK_THROWS_AS(Polynomial(1) + Polynomial(2), DomainError);
}
