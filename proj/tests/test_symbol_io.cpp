#include <doctest.h>

#include <cmath>

#include "bergman/io.hpp"
#include "bergman/symbol.hpp"
#include "support.hpp"

using namespace bergman;

namespace {

MultiIndex mi(std::initializer_list<std::uint32_t> e) { return MultiIndex(std::vector<std::uint32_t>(e)); }

void check_same_function(const HoloFunction& a, const HoloFunction& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  for (int k = 0; k < 10; ++k) {
    const Point z = testing::random_point(rng, a.dim(), 0.9);
    CHECK(std::abs(a(z) - b(z)) < 1e-12 * (1.0 + std::abs(a(z))));
  }
}

}  // namespace

TEST_CASE("polynomial grammar") {
  const HoloFunction h = parse_symbol("z1^2*z2 - 3 + 2i*z2", 2);
  REQUIRE(h.is_polynomial());
  const Polynomial& p = h.polynomial_part();
  CHECK(p.coefficient(mi({2, 1})) == Complex{1.0, 0.0});
  CHECK(p.constant_term() == Complex{-3.0, 0.0});
  CHECK(p.coefficient(mi({0, 1})) == Complex{0.0, 2.0});
  CHECK(parse_symbol("(1+z)^3", 1).polynomial_part().coefficient(mi({2})) == Complex{3.0, 0.0});
  CHECK(parse_symbol("z^5", 1).polynomial_part() == Polynomial::monomial(mi({5})));
  CHECK(parse_symbol("-(z)", 1).polynomial_part() == Polynomial::monomial(mi({1}), -1.0));
  CHECK(parse_symbol("1.5e-1", 1).polynomial_part().constant_term() == Complex{0.15, 0.0});
}

TEST_CASE("closed symbols") {
  const HoloFunction c = parse_symbol("ces()", 2);
  REQUIRE(c.log_terms().size() == 1);
  CHECK(norm(c.log_terms()[0].base) == doctest::Approx(1.0));
  check_same_function(c, HoloFunction::log_kernel(BoundaryDirection::diagonal(2).coords()), 1);
  check_same_function(parse_symbol("ces(1)", 1), HoloFunction::log_kernel({1.0}), 2);
  check_same_function(parse_symbol("2*pow(0.5, 0.5i; 1.5) + z1", 2),
                      HoloFunction::power_kernel({0.5, Complex{0.0, 0.5}}, 1.5) * 2.0 +
                          HoloFunction(Polynomial::monomial(mi({1, 0}))),
                      3);
  check_same_function(parse_symbol("-ces(0.5)*3", 1), HoloFunction::log_kernel({0.5}) * -3.0, 4);
}

TEST_CASE("parse errors carry positions") {
  auto pos = [](const char* text, std::size_t n) -> std::size_t {
    try {
      parse_symbol(text, n);
    } catch (const ParseError& e) {
      return e.position();
    }
    return 999;
  };
  CHECK(pos("z^", 1) == 2);
  CHECK(pos("z + )", 1) == 4);
  CHECK(pos("z", 2) == 1);
  CHECK(pos("z3", 2) == 2);
  CHECK(pos("ces(2)", 1) != 999);
  CHECK(pos("ces(0.5)*z", 1) != 999);
  CHECK(pos("pow(0.5; 1i)", 1) != 999);
  CHECK(pos("pow(0.5, 0.5; 1)", 1) != 999);
  CHECK(pos("ces()^2", 1) != 999);
  CHECK(pos("q", 1) == 0);
  CHECK_THROWS_AS(parse_symbol("1", 0), DomainError);
}

TEST_CASE("property: JSON round trip of random functions") {
  std::mt19937_64 rng(71);
  for (int k = 0; k < 30; ++k) {
    const std::size_t n = k % 2 + 1;
    CVec b(n);
    for (auto& c : b) c = 0.5 * testing::unit_square(rng);
    const HoloFunction h = HoloFunction(testing::random_poly(rng, n, 8, 4)) + HoloFunction::log_kernel(b) * 2.0 +
                           HoloFunction::power_kernel(b, 1.25).radial_derivative();
    const Json j = to_json(h);
    const HoloFunction back = holo_from_json(Json::parse(j.dump()));
    CHECK(to_json(back) == j);
    check_same_function(h, back, 100 + k);
  }
}

TEST_CASE("polynomial JSON is exact") {
  const Polynomial p = Polynomial::monomial(mi({3, 1}), Complex{0.1, -1.0 / 3.0});
  CHECK(polynomial_from_json(Json::parse(to_json(p).dump()), 2) == p);
  CHECK_THROWS(holo_from_json(Json{{"dimension", 1}, {"polynomial", Json::array()},
                                   {"closed", Json::array({Json{{"kind", "bogus"}}})}}));
}

TEST_CASE("result serialization carries the expected fields") {
  NormResult r;
  r.value = 1.5;
  const Json j = to_json(r);
  CHECK(j["value"] == 1.5);
  const Json s = to_json(SpaceParams{2, 3.0, 0.5});
  CHECK(s["n"] == 2);
  CHECK(s["p"] == 3.0);
  CHECK(s["alpha"] == 0.5);
}
