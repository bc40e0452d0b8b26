#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "eqd/exact.hpp"

using namespace eqd;

namespace {

const Polygon& square() {
  static const Polygon p({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  return p;
}

CombinatorialType cone4() { return {4, 5, {{0, 1, 4}, {1, 2, 4}, {2, 3, 4}, {3, 0, 4}}}; }
CombinatorialType collapse_type() {
  return {4, 6, {{0, 1, 4}, {1, 2, 5}, {2, 4, 5}, {4, 1, 5}, {2, 0, 4}, {0, 2, 3}}};
}

RationalPoly var(std::size_t n, std::size_t k) { return RationalPoly::variable(n, k); }
RationalPoly cst(std::size_t n, Rational c) { return RationalPoly::constant(n, c); }

IntPoly ints(std::initializer_list<long> c) {
  IntPoly p;
  for (long v : c) p.emplace_back(v);
  return p;
}

bool same_up_to_sign(const RationalPoly& a, const RationalPoly& b) { return a == b || a == b * Rational(-1); }

}  // namespace

TEST_CASE("resultants") {
  const RationalPoly x = var(2, 0), y = var(2, 1), one = cst(2, 1);
  // Res_x(x^2 - y, x - 1) = +-(1 - y)
  CHECK(same_up_to_sign(resultant(x * x - y, x - one, 0), one - y));
  // Res_x(x^2 - 2, x^2 - 3) = 1
  CHECK(same_up_to_sign(resultant(x * x - cst(2, 2), x * x - cst(2, 3), 0), one));
  // Common root gives zero.
  CHECK(resultant(x * x - one, x - one, 0).is_zero());
  // Res_x(x*y - 1, x + y) = +-(-y^2 - 1)
  CHECK(same_up_to_sign(resultant(x * y - one, x + y, 0), y * y + one));
}

TEST_CASE("exact division and primitive parts") {
  const RationalPoly x = var(2, 0), y = var(2, 1), one = cst(2, 1);
  const RationalPoly a = (x + y) * (x - one);
  CHECK(exact_divide(a, x + y) == x - one);
  CHECK_THROWS_AS(exact_divide(a, x + one), std::domain_error);
  CHECK(primitive_part((x * Rational(-4)) + cst(2, 6)) == x * Rational(2) - cst(2, 3));
  CHECK(primitive_part(x * Rational(1, 3) + cst(2, Rational(1, 2))) == x * Rational(2) + cst(2, 3));
}

TEST_CASE("univariate helpers") {
  const std::vector<Rational> a{-1, 0, 1};      // t^2 - 1
  const std::vector<Rational> b{1, 2, 1};       // (t + 1)^2
  CHECK(univariate_gcd(a, b) == std::vector<Rational>{1, 1});
  CHECK(square_free({1, 3, 3, 1}) == std::vector<Rational>{1, 1});
  CHECK(to_primitive_integer({Rational(-1, 2), Rational(3, 2)}) == ints({-1, 3}));
  CHECK(evaluate_exact(ints({-1, 3}), Rational(1, 3)) == 0);
  CHECK(to_string(ints({-1, 0, 2})) == "2t^2 - 1");
  const auto r = roots(ints({-2, 0, 1}));
  REQUIRE(r.size() == 2);
  CHECK(std::abs(r[0] + std::sqrt(2.0)) < 1e-14);
  CHECK(std::abs(r[1] - std::sqrt(2.0)) < 1e-14);
}

TEST_CASE("hand certificates") {
  const AreaAssignment quarter{{Rational(1, 8), Rational(1, 4), Rational(3, 8), Rational(1, 4)}};
  const SolutionSet ss = solve(cone4(), square(), quarter);
  const auto certs = certify(cone4(), square(), quarter, ss);
  REQUIRE(certs.size() == 1);
  REQUIRE(certs[0].ok());
  CHECK(certs[0].coordinates[0].polynomial == ints({-1, 2}));
  CHECK(certs[0].coordinates[1].polynomial == ints({-1, 4}));

  const Polygon tri({{0, 0}, {1, 0}, {0, 1}});
  const CombinatorialType g{3, 4, {{0, 1, 3}, {1, 2, 3}, {2, 0, 3}}};
  const AreaAssignment eq = AreaAssignment::equal(g, tri);
  const auto tc = certify(g, tri, eq, solve(g, tri, eq));
  REQUIRE(tc.size() == 1);
  CHECK(tc[0].coordinates[0].polynomial == ints({-1, 3}));
  CHECK(tc[0].coordinates[1].polynomial == ints({-1, 3}));
}

TEST_CASE("eliminants vanish exactly at rational solutions") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const auto sample = sample_configuration(collapse_type(), square(), seed);
    const AreaAssignment a = AreaAssignment::induced(collapse_type(), square(), sample);
    const PolynomialSystem s = build_system(collapse_type(), square(), a);
    const auto polys = coordinate_eliminants(s);
    REQUIRE(polys.size() == 4);
    const Rational coords[4] = {sample[0].x, sample[0].y, sample[1].x, sample[1].y};
    for (std::size_t k = 0; k < 4; ++k) {
      CHECK(polys[k].size() >= 2);
      CHECK(evaluate_exact(polys[k], coords[k]) == 0);
    }
  }
}

TEST_CASE("match_root") {
  const CoordinateCertificate c = match_root("x5", ints({-1, 2}), Complex(0.5, 0.0));
  CHECK(c.matched);
  CHECK(c.distance < 1e-15);
  CHECK_FALSE(match_root("x5", ints({-1, 2}), Complex(0.6, 0.0)).matched);
}

TEST_CASE("certification cap and inconsistency") {
  const CombinatorialType g = enumerate_types(4, 3).front();
  const AreaAssignment a = AreaAssignment::equal(g, square());
  CHECK_THROWS_AS(certify(g, square(), a, SolutionSet{}), std::invalid_argument);

  const RationalPoly x = var(1, 0), one = cst(1, 1);
  const std::vector<RationalPoly> bad{x - one, x - one * Rational(2)};
  CHECK_THROWS_AS(eliminate(bad, 0), EliminationFailure);
}
