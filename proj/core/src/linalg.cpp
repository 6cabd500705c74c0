#include "dtlab/linalg.hpp"

#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "dtlab/error.hpp"

namespace dtlab {

namespace {

bool is_upper_triangular(const CMatrix& a) {
  for (Index j = 0; j < a.cols(); ++j) {
    for (Index i = j + 1; i < a.rows(); ++i) {
      if (a(i, j) != Complex(0.0, 0.0)) return false;
    }
  }
  return true;
}

Eigen::VectorXd singular_values(const CMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) return {};
  if (std::min(a.rows(), a.cols()) <= 32) {
    return Eigen::JacobiSVD<CMatrix>(a).singularValues();
  }
  return Eigen::BDCSVD<CMatrix>(a).singularValues();
}

// Exchanges the adjacent diagonal entries k, k+1 of the upper triangular U,
// updating Q so that Q U Q* is unchanged.
void swap_adjacent(CMatrix& q, CMatrix& u, Index k, double scale) {
  const Complex a = u(k, k);
  const Complex b = u(k + 1, k + 1);
  const Complex h = u(k, k + 1);
  const Complex d = b - a;
  const double rho = std::hypot(std::abs(h), std::abs(d));
  if (rho == 0.0) return;  // equal eigenvalues and a diagonal 2x2 block
  // First column: eigenvector (h, b - a) of the 2x2 block for eigenvalue b.
  Eigen::Matrix2cd g;
  g(0, 0) = h / rho;
  g(1, 0) = d / rho;
  g(0, 1) = -std::conj(d) / rho;
  g(1, 1) = std::conj(h) / rho;

  u.middleRows(k, 2) = g.adjoint() * u.middleRows(k, 2);
  u.middleCols(k, 2) = u.middleCols(k, 2) * g;
  q.middleCols(k, 2) = q.middleCols(k, 2) * g;

  const double residual = std::abs(u(k + 1, k));
  if (residual > 1e-8 * scale) {
    throw_numerical("matrix_lab.reorder",
                    "Schur swap left subdiagonal residual " + std::to_string(residual) +
                        " (ill-conditioned eigenvalue cluster)");
  }
  u(k + 1, k) = Complex(0.0, 0.0);
  u(k, k) = b;
  u(k + 1, k + 1) = a;
}

}  // namespace

SchurForm schur(const CMatrix& a) {
  if (a.rows() != a.cols()) throw_config("matrix_lab.dim", "schur needs a square matrix");
  require_finite(a, "schur input");
  const Index n = a.rows();
  if (is_upper_triangular(a)) return {CMatrix::Identity(n, n), a};
  Eigen::ComplexSchur<CMatrix> cs(a, true);
  if (cs.info() != Eigen::Success) throw_numerical("matrix_lab.schur", "complex Schur iteration did not converge");
  SchurForm out{cs.matrixU(), cs.matrixT()};
  out.U.triangularView<Eigen::StrictlyLower>().setZero();
  return out;
}

OrderedSchur reorder_schur(const SchurForm& form, const EigenvaluePredicate& select) {
  OrderedSchur out{form.Q, form.U, 0};
  const Index n = out.U.rows();
  const double scale = std::max(out.U.norm(), std::numeric_limits<double>::min());
  for (Index i = 0; i < n; ++i) {
    if (!select(out.U(i, i))) continue;
    for (Index pos = i; pos > out.k; --pos) swap_adjacent(out.Q, out.U, pos - 1, scale);
    ++out.k;
  }
  return out;
}

double op_norm(const CMatrix& a) {
  const auto s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(0);
}

double min_singular_value(const CMatrix& a) {
  const auto s = singular_values(a);
  return s.size() == 0 ? 0.0 : s(s.size() - 1);
}

Complex normalized_trace(const CMatrix& a) {
  if (a.rows() == 0) throw_config("matrix_lab.dim", "normalized trace of an empty matrix");
  return a.trace() / static_cast<double>(a.rows());
}

double gns_norm(const CMatrix& a) {
  if (a.rows() == 0) throw_config("matrix_lab.dim", "gns_norm of an empty matrix");
  return a.norm() / std::sqrt(static_cast<double>(a.rows()));
}

Complex trace_product(const CMatrix& a, const CMatrix& b) {
  // sum_ij A_ij B_ji
  return a.cwiseProduct(b.transpose()).sum() / static_cast<double>(a.rows());
}

CMatrix matrix_power(const CMatrix& a, int k) {
  if (k < 0) throw_config("matrix_lab.power", "negative power");
  CMatrix out = CMatrix::Identity(a.rows(), a.cols());
  CMatrix base = a;
  while (k > 0) {
    if (k & 1) out = out * base;
    k >>= 1;
    if (k > 0) base = base * base;
  }
  return out;
}

double condition_number(const CMatrix& a) {
  const auto s = singular_values(a);
  if (s.size() == 0) return 1.0;
  const double lo = s(s.size() - 1);
  return lo == 0.0 ? std::numeric_limits<double>::infinity() : s(0) / lo;
}

CMatrix inverse(const CMatrix& a, double max_condition) {
  if (a.rows() != a.cols()) throw_config("matrix_lab.dim", "inverse needs a square matrix");
  require_finite(a, "inverse input");
  const Index n = a.rows();
  Eigen::PartialPivLU<CMatrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond > 1.0 / max_condition)) {
    throw_numerical("matrix_lab.singular", "matrix is numerically singular (rcond " + std::to_string(rcond) + ")");
  }
  CMatrix inv = lu.inverse();
  require_finite(inv, "inverse");
  const CMatrix defect = a * inv - CMatrix::Identity(n, n);
  // Frobenius dominates the spectral norm; only pay for the SVD when it is inconclusive.
  double residual = defect.norm();
  if (residual > 1e-8) residual = op_norm(defect);
  if (residual > 1e-8) {
    throw_numerical("matrix_lab.singular", "inverse residual " + std::to_string(residual) + " exceeds 1e-8");
  }
  return inv;
}

std::vector<Complex> eigenvalues(const CMatrix& a) {
  const SchurForm s = schur(a);
  std::vector<Complex> out(static_cast<std::size_t>(a.rows()));
  for (Index i = 0; i < a.rows(); ++i) out[static_cast<std::size_t>(i)] = s.U(i, i);
  return out;
}

}  // namespace dtlab
