#include <doctest.h>

#include <cmath>
#include <limits>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/region.hpp"

using dtlab::Region;
using C = std::complex<double>;

TEST_CASE("annulus membership") {
  const Region a = Region::annulus(1.0, 2.0);
  CHECK(a.contains(C(1.0, 0.0)));
  CHECK(a.contains(C(0.0, 2.0)));
  CHECK(a.contains(C(1.5, 0.0)));
  CHECK_FALSE(a.contains(C(0.5, 0.0)));
  const Region open = Region::annulus(1.0, 2.0, false);
  CHECK_FALSE(open.contains(C(1.0, 0.0)));
  CHECK(Region::disc(1.0).contains(C(0.0, 0.0)));
  CHECK(Region::annulus(1.0, std::numeric_limits<double>::infinity()).contains(C(1e9, 0.0)));
  CHECK_THROWS_AS(Region::annulus(2.0, 1.0), dtlab::Error);
}

TEST_CASE("set algebra") {
  const Region a = Region::disc(2.0), b = Region::annulus(1.0, 3.0);
  for (double r : {0.5, 1.5, 2.5, 3.5}) {
    const C z = std::polar(r, 0.3);
    CHECK((a | b).contains(z) == (a.contains(z) || b.contains(z)));
    CHECK((a & b).contains(z) == (a.contains(z) && b.contains(z)));
    CHECK((~a).contains(z) == !a.contains(z));
  }
  CHECK_FALSE(Region::empty().contains(C(0, 0)));
  CHECK(Region::plane().contains(C(5, 5)));
}

TEST_CASE("boundary distance") {
  const Region a = Region::annulus(1.0, 2.0) | Region::disc(0.25);
  CHECK(a.boundary_distance(C(1.2, 0.0)) == doctest::Approx(0.2));
  CHECK(a.boundary_distance(C(0.3, 0.0)) == doctest::Approx(0.05));
  CHECK(std::isinf(Region::plane().boundary_distance(C(1, 0))));
}

TEST_CASE("json round trip keeps membership") {
  const Region r = ~(Region::annulus(0.5, 1.0, false) | Region::annulus(2.0, std::numeric_limits<double>::infinity()));
  const Region back = dtlab::region_from_json(dtlab::to_json(r));
  CHECK(back.to_string() == r.to_string());
  for (double x : {0.25, 0.5, 0.75, 1.5, 2.0, 5.0}) CHECK(back.contains(C(x, 0)) == r.contains(C(x, 0)));
  CHECK_THROWS_AS(dtlab::region_from_json(nlohmann::json{{"op", "bogus"}}), dtlab::Error);
  CHECK(Region::annulus(1.2, 1.8).to_string() == "A[1.2,1.8]");
}
