#pragma once

// Brown measures, Haagerup-Schultz projections and angles for matrices.
//
// For an N x N matrix with the normalized trace, the Brown measure is the
// eigenvalue counting measure and the Haagerup-Schultz projection P(Z, B) is
// the orthogonal projection onto the sum of the generalized eigenspaces for
// eigenvalues in B.  It is computed from an ordered Schur form: the leading
// k Schur vectors after moving the eigenvalues in B to the front.

#include <memory>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dtlab/linalg.hpp"
#include "dtlab/matrix_lab.hpp"
#include "dtlab/region.hpp"

namespace dtlab {

/// Eigenvalues closer than this to a region boundary abort the projection.
inline constexpr double kBoundaryTolerance = 1e-8;

struct HSProjection {
  CMatrix basis;  ///< N x rank, orthonormal columns spanning the range
  CMatrix P;      ///< basis * basis^*
  Index rank = 0;
  Region region;
  std::shared_ptr<const CMatrix> source;

  Index dim() const { return basis.rows(); }
};

/// Multiset of eigenvalues (the support points of the empirical Brown measure).
std::vector<Complex> brown_empirical(const CMatrix& z);

/// Fraction of the points lying in the region.
double brown_mass(const std::vector<Complex>& points, const Region& region);

/// Number of diagonal entries of U (eigenvalues) in the region; throws
/// brown_hs.boundary_ambiguity for an eigenvalue within kBoundaryTolerance of
/// the region's boundary.
Index count_in_region(const SchurForm& form, const Region& region);

HSProjection hs_projection(const CMatrix& z, const Region& region);
/// Reuses a precomputed Schur form of z.
HSProjection hs_projection(const SchurForm& form, const Region& region, std::shared_ptr<const CMatrix> source = {});

/// ||(1 - P) Z P||.
double invariance_residual(const CMatrix& z, const HSProjection& p);

/// Cosine of the minimal angle between the ranges: largest singular value of
/// the product of orthonormal bases, i.e. ||Q P||.
double angle_cos(const HSProjection& p, const HSProjection& q);
double angle_cos_bases(const CMatrix& a, const CMatrix& b);

/// Sine of the largest principal angle between two subspaces given by
/// orthonormal bases; 1 when the dimensions differ.
double subspace_distance(const CMatrix& a, const CMatrix& b);

/// Orthonormal basis of the span of the leading `rank` left singular vectors.
CMatrix leading_left_singular_vectors(const CMatrix& columns, Index rank);

struct LatticeReport {
  Index union_rank = 0;
  Index intersection_rank = 0;
  double union_distance = 0.0;         ///< ran P(B1 u B2) vs ran P1 v ran P2
  double union_excess = 0.0;           ///< singular value beyond the expected span rank
  double intersection_distance = 0.0;  ///< ran P(B1 n B2) vs ran P1 ^ ran P2
  double intersection_cos = 1.0;       ///< smallest cosine inside the claimed intersection
  double intersection_leak = 0.0;      ///< how far the claimed intersection sticks out of ran P2
  bool pass = false;
};

LatticeReport check_lattice(const CMatrix& z, const Region& b1, const Region& b2, double tolerance = 1e-8);

struct SimilarityReport {
  double condition = 1.0;
  double eigenvalue_distance = 0.0;  ///< Hausdorff distance between spectra
  double subspace_distance = 0.0;    ///< ran P(A Z A^-1, B) vs A ran P(Z, B)
  bool pass = false;
};

/// Requires cond(A) < 1e8.
SimilarityReport check_similarity(const CMatrix& z, const CMatrix& a, const Region& b, double tolerance = 1e-6);

/// ||(T^*n T^n)^(1/2n)|| = ||T^n||^(1/n) for n = 1..n_max.
std::vector<double> sot_qn_decay(const CMatrix& t, int n_max);

struct MembershipCertificate {
  std::vector<double> sequence;  ///< ||Z^n xi||^(1/n), n = 1..n_max
  double tail_max = 0.0;         ///< max over the last quarter of the sequence
  double radius = 0.0;
  bool pass = false;             ///< tail_max <= radius * 1.05
};

/// Growth certificate for xi in ran P(Z, closed disc of radius r).
MembershipCertificate hs_membership_certificate(const CMatrix& z, double r, const CVector& xi, int n_max);

nlohmann::json to_json(const LatticeReport& report);
nlohmann::json to_json(const SimilarityReport& report);
nlohmann::json to_json(const MembershipCertificate& cert);

}  // namespace dtlab
