#include <doctest.h>

#include <nlohmann/json.hpp>

#include "dtlab/bpoly.hpp"
#include "dtlab/error.hpp"

using dtlab::BElem;
using dtlab::Rational;

namespace {

Rational q(const char* s) { return dtlab::parse_rational(s); }

BElem poly(std::initializer_list<const char*> coeffs) {
  std::vector<Rational> c;
  for (const char* s : coeffs) c.push_back(q(s));
  return BElem(std::move(c));
}

// Termwise integral of x^k over [a, b], written out directly.
Rational power_integral(std::size_t k, const Rational& a, const Rational& b) {
  Rational hi = 1, lo = 1;
  for (std::size_t i = 0; i <= k; ++i) {
    hi *= b;
    lo *= a;
  }
  return (hi - lo) / Rational(static_cast<long>(k + 1));
}

}  // namespace

TEST_CASE("rationals parse and print in lowest terms") {
  CHECK(dtlab::rational_to_string(q("2/4")) == "1/2");
  CHECK(dtlab::rational_to_string(q("-6/3")) == "-2");
  CHECK(dtlab::rational_to_string(q("0")) == "0");
  CHECK(dtlab::rational_to_string(q("-3/9")) == "-1/3");
  CHECK(dtlab::rational_to_string(q("+5")) == "5");
  CHECK_THROWS_AS(q("1/0"), dtlab::Error);
  CHECK_THROWS_AS(q("abc"), dtlab::Error);
}

TEST_CASE("canonical form drops trailing zeros") {
  const BElem p = poly({"1", "0", "0"});
  CHECK(p.degree() == 0);
  CHECK(p == BElem::one());
  CHECK(BElem(std::vector<Rational>{0, 0}).is_zero());
  CHECK((BElem::identity() - BElem::identity()).is_zero());
}

TEST_CASE("ring operations") {
  const BElem a = poly({"1", "2"});       // 1 + 2x
  const BElem b = poly({"-1/2", "0", "3"});  // -1/2 + 3x^2
  CHECK(a * b == poly({"-1/2", "-1", "3", "6"}));
  CHECK(a + b == poly({"1/2", "2", "3"}));
  CHECK(a * b == b * a);
  CHECK((a + b) * a == a * a + b * a);
  CHECK(a(q("1/2")) == 2);
  CHECK(b.evaluate(1.0) == doctest::Approx(2.5));
  CHECK(a.reflected() == poly({"3", "-2"}));
  CHECK(b.to_string() == "-1/2 + 3*x^2");
}

TEST_CASE("alpha maps match termwise integration") {
  for (std::size_t k = 0; k < 6; ++k) {
    const BElem f = BElem::monomial(1, k);
    for (const char* xs : {"0", "1/3", "1/2", "7/8", "1"}) {
      const Rational x = q(xs);
      CHECK(dtlab::alpha21(f)(x) == power_integral(k, 0, x));
      CHECK(dtlab::alpha12(f)(x) == power_integral(k, x, 1));
    }
    CHECK(dtlab::trace(f) == Rational(1, static_cast<long>(k + 1)));
  }
}

TEST_CASE("alpha maps: structural identities") {
  const BElem f = poly({"2", "-1/3", "5/7", "1"});
  // alpha12 + alpha21 is the constant trace.
  CHECK(dtlab::alpha12(f) + dtlab::alpha21(f) == BElem::constant(dtlab::trace(f)));
  // Reflection x -> 1-x swaps the two maps.
  CHECK(dtlab::alpha12(f).reflected() == dtlab::alpha21(f.reflected()));
  // Both maps preserve the trace of products with the unit only through the
  // integration by parts identity tau(g alpha21(f)) = tau(f alpha12(g)).
  const BElem g = poly({"1", "1"});
  CHECK(dtlab::trace(g * dtlab::alpha21(f)) == dtlab::trace(f * dtlab::alpha12(g)));
}

TEST_CASE("grid sup and evaluation grid") {
  const BElem f = poly({"0", "-2"});
  const auto grid = dtlab::eval_grid(f, 5);
  REQUIRE(grid.size() == 5);
  CHECK(grid[2] == -1);
  CHECK(dtlab::grid_sup_abs(f, 5) == 2);
  CHECK_THROWS_AS(dtlab::eval_grid(f, 1), dtlab::Error);
}

TEST_CASE("json round trip") {
  const BElem f = poly({"1/2", "0", "-3"});
  const nlohmann::json j = dtlab::to_json(f);
  CHECK(j == nlohmann::json::array({"1/2", "0", "-3"}));
  CHECK(dtlab::belem_from_json(j) == f);
  CHECK(dtlab::belem_from_json(nlohmann::json::array({1, "2/3"})) == poly({"1", "2/3"}));
  CHECK_THROWS_AS(dtlab::belem_from_json(nlohmann::json::object()), dtlab::Error);
}
