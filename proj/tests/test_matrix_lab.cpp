#include <doctest.h>

#include <cmath>
#include <set>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/matrix_io.hpp"
#include "dtlab/matrix_lab.hpp"
#include "dtlab/seed.hpp"

#include <sstream>

using namespace dtlab;

TEST_CASE("derived seeds are distinct and reproducible") {
  std::set<std::uint64_t> seen;
  for (std::uint64_t stream = 0; stream < 8; ++stream) {
    for (std::uint64_t i = 0; i < 64; ++i) seen.insert(derive_seed(42, stream, i));
  }
  CHECK(seen.size() == 8 * 64);
  CHECK(derive_seed(1, 2, 3) == derive_seed(1, 2, 3));
  CHECK(derive_seed(1, 2, 3) != derive_seed(2, 2, 3));
  static_assert(splitmix64(0) == 0xe220a8397b1dcdafULL);
}

TEST_CASE("radial measures") {
  const RadialMeasure mu({{2.0, 0.25}, {1.0, 0.75}});
  CHECK(mu.min_radius() == 1.0);
  CHECK(mu.max_radius() == 2.0);
  CHECK(mu.mass(0.5, 1.5) == doctest::Approx(0.75));
  CHECK(mu.radial_moment(2.0) == doctest::Approx(0.75 + 0.25 * 4.0));
  const RadialMeasure r = mu.restricted(1.5, 3.0);
  REQUIRE(r.size() == 1);
  CHECK(r.atoms()[0].weight == doctest::Approx(1.0));
  CHECK(RadialMeasure::normalized({{1.0, 2.0}, {3.0, 6.0}}).atoms()[1].weight == doctest::Approx(0.75));
  CHECK_THROWS_AS(RadialMeasure({{1.0, 0.5}}), Error);
  CHECK_THROWS_AS(RadialMeasure({{1.0, 0.5}, {1.0, 0.5}}), Error);
  CHECK_THROWS_AS(mu.restricted(3.0, 4.0), Error);
  CHECK(radial_measure_from_json(to_json(mu)).atoms()[1].radius == 2.0);
}

TEST_CASE("apportionment sums to n and follows the weights") {
  const std::vector<double> w{0.5, 0.3, 0.2};
  for (Index n : {1, 7, 10, 256, 1001}) {
    const auto counts = apportion(w, n);
    Index total = 0;
    for (std::size_t i = 0; i < counts.size(); ++i) {
      total += counts[i];
      CHECK(std::abs(static_cast<double>(counts[i]) - w[i] * static_cast<double>(n)) < 1.0);
    }
    CHECK(total == n);
  }
}

TEST_CASE("GUE sample is Hermitian with variance 1/N") {
  const Index n = 200;
  const CMatrix x = sample_gue(n, 5);
  CHECK((x - x.adjoint()).norm() == 0.0);
  // Normalized Frobenius norm squared estimates tau(X^2) = 1.
  CHECK(x.squaredNorm() / static_cast<double>(n) == doctest::Approx(1.0).epsilon(0.05));
  CHECK(sample_gue(n, 5) == x);
  CHECK(sample_gue(n, 6) != x);
}

TEST_CASE("upper-triangular sample is strictly upper triangular") {
  const Index n = 300;
  const CMatrix t = sample_ut(n, 1);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j) CHECK(t(i, j) == Complex(0.0, 0.0));
  // tau(T^* T) = (N-1)/(2N) -> 1/2.
  CHECK(t.squaredNorm() / static_cast<double>(n) == doctest::Approx(0.5).epsilon(0.05));
  CHECK(strict_upper(t) == t);
}

TEST_CASE("diagonal realizes the measure") {
  const RadialMeasure mu({{1.0, 0.5}, {2.0, 0.5}});
  const CMatrix d = diag_from_measure(mu, 10, 3);
  int ones = 0, twos = 0;
  for (Index i = 0; i < 10; ++i) {
    const double r = std::abs(d(i, i));
    if (std::abs(r - 1.0) < 1e-14) ++ones;
    if (std::abs(r - 2.0) < 1e-14) ++twos;
  }
  CHECK(ones == 5);
  CHECK(twos == 5);
  CHECK_THROWS_AS(diag_from_measure(mu, 1, 0), Error);
}

TEST_CASE("DT model structure") {
  const RadialMeasure mu({{1.0, 0.5}, {2.0, 0.5}});
  const MatrixModel m = build_dt(mu, 0.7, 64, 11);
  CHECK_NOTHROW(validate(m));
  CHECK((m.Z - (m.D + 0.7 * m.T)).norm() == 0.0);
  CHECK(strict_upper(m.T) == m.T);
  const MatrixModel zero = build_dt(mu, 0.0, 64, 11);
  CHECK(zero.Z == zero.D);
  CHECK_THROWS_AS(build_dt(mu, -1.0, 64, 0), Error);
}

TEST_CASE("block DT model has orthogonal block projections") {
  const std::vector<BlockPart> parts{{RadialMeasure::circle(1.0), 0.5}, {RadialMeasure::circle(2.0), 0.5}};
  const MatrixModel m = build_block_dt(parts, 1.0, 40, 2);
  CHECK_NOTHROW(validate(m));
  REQUIRE(m.blocks.size() == 2);
  CHECK(m.blocks[0].size == 20);
  CHECK((m.blocks[0].projection * m.blocks[1].projection).norm() == 0.0);
  // Upper block triangular with the inner annulus first.
  for (Index i = 20; i < 40; ++i)
    for (Index j = 0; j < 20; ++j) CHECK(m.Z(i, j) == Complex(0.0, 0.0));
}

TEST_CASE("semicircular mix keeps the diagonal blocks of the first sample") {
  const Index n = 8;
  const CMatrix xt = sample_gue(n, 1), x = sample_gue(n, 2);
  CMatrix p1 = CMatrix::Zero(n, n), p2 = CMatrix::Zero(n, n);
  for (Index i = 0; i < 4; ++i) p1(i, i) = 1.0;
  for (Index i = 4; i < 8; ++i) p2(i, i) = 1.0;
  const std::vector<CMatrix> ps{p1, p2};
  const CMatrix y = semicircular_mix(xt, x, ps);
  CHECK((p1 * y * p1 - p1 * xt * p1).norm() < 1e-15);
  CHECK((p1 * y * p2 - p1 * x * p2).norm() < 1e-15);
  CHECK((y - y.adjoint()).norm() < 1e-15);
}

TEST_CASE("matrix io round trips exactly") {
  const CMatrix a = sample_gue(5, 9);
  std::stringstream ss;
  write_binary(ss, a);
  CHECK(read_binary(ss) == a);
  CHECK(matrix_from_json(matrix_to_json(a)) == a);
  std::stringstream bad("not a matrix");
  CHECK_THROWS_AS(read_binary(bad), Error);
}

TEST_CASE("non-finite entries are rejected") {
  CMatrix a = CMatrix::Identity(2, 2);
  a(0, 1) = Complex(std::nan(""), 0.0);
  CHECK_THROWS_AS(require_finite(a, "a"), Error);
}
