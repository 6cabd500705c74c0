#include <doctest.h>

#include <algorithm>

#include "dtlab/error.hpp"
#include "dtlab/linalg.hpp"

using namespace dtlab;

namespace {

CMatrix random_matrix(Index n, std::uint64_t seed) { return sample_gue(n, seed) + Complex(0, 1) * sample_gue(n, seed + 1); }

}  // namespace

TEST_CASE("Schur form reconstructs the matrix") {
  const CMatrix a = random_matrix(12, 3);
  const SchurForm f = schur(a);
  CHECK((f.Q * f.U * f.Q.adjoint() - a).norm() < 1e-12 * a.norm());
  CHECK((f.Q.adjoint() * f.Q - CMatrix::Identity(12, 12)).norm() < 1e-12);
  CHECK(strict_upper(f.U.adjoint()).norm() == 0.0);
}

TEST_CASE("upper-triangular input is returned untouched") {
  CMatrix a = strict_upper(random_matrix(6, 1));
  for (Index i = 0; i < 6; ++i) a(i, i) = Complex(static_cast<double>(i), 1.0);
  const SchurForm f = schur(a);
  CHECK(f.Q == CMatrix::Identity(6, 6));
  CHECK(f.U == a);
}

TEST_CASE("reordering moves the selected eigenvalues to the front") {
  const CMatrix a = random_matrix(15, 7);
  const SchurForm f = schur(a);
  auto select = [](Complex z) { return std::abs(z) < 1.0; };
  const OrderedSchur o = reorder_schur(f, select);
  const Index expected = std::count_if(f.U.diagonal().begin(), f.U.diagonal().end(), select);
  CHECK(o.k == expected);
  for (Index i = 0; i < 15; ++i) CHECK(select(o.U(i, i)) == (i < o.k));
  CHECK((o.Q * o.U * o.Q.adjoint() - a).norm() < 1e-11 * a.norm());
  CHECK(strict_upper(o.U.adjoint()).norm() == 0.0);
  // The leading columns span an invariant subspace.
  const CMatrix basis = o.Q.leftCols(o.k);
  CHECK((a * basis - basis * (basis.adjoint() * a * basis)).norm() < 1e-11 * a.norm());
}

TEST_CASE("norms and traces") {
  CMatrix d = CMatrix::Zero(3, 3);
  d.diagonal() << 3.0, Complex(0, -4), 1.0;
  CHECK(op_norm(d) == doctest::Approx(4.0));
  CHECK(min_singular_value(d) == doctest::Approx(1.0));
  CHECK(condition_number(d) == doctest::Approx(4.0));
  CHECK(normalized_trace(d) == Complex(4.0 / 3.0, -4.0 / 3.0));
  CHECK(gns_norm(d) == doctest::Approx(std::sqrt(26.0 / 3.0)));
  const CMatrix a = random_matrix(7, 2), b = random_matrix(7, 4);
  CHECK(std::abs(trace_product(a, b) - normalized_trace(a * b)) < 1e-13);
  CHECK((matrix_power(a, 3) - a * a * a).norm() < 1e-12);
  CHECK(matrix_power(a, 0) == CMatrix::Identity(7, 7));
}

TEST_CASE("checked inverse") {
  const CMatrix a = random_matrix(9, 8) + 5.0 * CMatrix::Identity(9, 9);
  CHECK((a * inverse(a) - CMatrix::Identity(9, 9)).norm() < 1e-12);
  CMatrix singular = CMatrix::Identity(3, 3);
  singular(2, 2) = 0.0;
  CHECK_THROWS_AS(inverse(singular), Error);
  CHECK_THROWS_AS(inverse(CMatrix::Zero(2, 3)), Error);
}
