#pragma once

// Dense complex linear algebra services: Schur forms and their reordering,
// norms, traces and checked inverses.

#include <functional>

#include "dtlab/matrix_lab.hpp"

namespace dtlab {

/// A = Q U Q* with Q unitary and U upper triangular.
struct SchurForm {
  CMatrix Q;
  CMatrix U;
};

/// Complex Schur decomposition.  Exactly upper-triangular input is returned
/// as (I, A) so its eigenvalues stay bit-exact.
SchurForm schur(const CMatrix& a);

struct OrderedSchur {
  CMatrix Q;
  CMatrix U;
  Index k = 0;  ///< number of selected eigenvalues, now in the leading slots
};

using EigenvaluePredicate = std::function<bool(Complex)>;

/// Moves every diagonal entry of U satisfying `select` to the leading block
/// with unitary Givens swaps.  Throws matrix_lab.reorder when a swap leaves a
/// subdiagonal residual above 1e-8 * ||U||.
OrderedSchur reorder_schur(const SchurForm& form, const EigenvaluePredicate& select);

/// Largest singular value.
double op_norm(const CMatrix& a);
/// Smallest singular value.
double min_singular_value(const CMatrix& a);
/// Tr(A) / N.
Complex normalized_trace(const CMatrix& a);
/// sqrt(tau_N(A* A)), the norm of A as a vector in L^2(M_N, tau_N).
double gns_norm(const CMatrix& a);
/// tau_N(A B) in O(N^2).
Complex trace_product(const CMatrix& a, const CMatrix& b);
/// A^k for k >= 0.
CMatrix matrix_power(const CMatrix& a, int k);

inline constexpr double kMaxCondition = 1e12;

/// Inverse with a condition check; throws matrix_lab.singular when the
/// estimated condition number reaches max_condition or the residual
/// ||A A^-1 - I|| exceeds 1e-8.
CMatrix inverse(const CMatrix& a, double max_condition = kMaxCondition);

/// sigma_max / sigma_min.
double condition_number(const CMatrix& a);

/// Eigenvalues in Schur order.
std::vector<Complex> eigenvalues(const CMatrix& a);

}  // namespace dtlab
