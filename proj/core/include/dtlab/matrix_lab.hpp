#pragma once

// Finite-N random-matrix realizations: semicircular (GUE) samples, the
// strictly upper-triangular model of the quasinilpotent DT-operator, diagonal
// realizations of radial measures, and DT(mu, c) / block DT models.
//
// Every sampler is a pure function of (N, seed).  The normalized trace
// tau_N = (1/N) Tr plays the role of the trace on the limit algebra.

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <nlohmann/json_fwd.hpp>

namespace dtlab {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Radially symmetric probability measure supported on finitely many circles.
class RadialMeasure {
 public:
  struct Atom {
    double radius;
    double weight;
  };

  /// Atoms are sorted by radius; radii must be distinct and nonnegative,
  /// weights positive with total 1 (within 1e-12).
  explicit RadialMeasure(std::vector<Atom> atoms);

  /// Single circle of the given radius.
  static RadialMeasure circle(double radius);
  /// Equal-weight atoms on the given radii.
  static RadialMeasure uniform(std::vector<double> radii);
  /// Normalizes positive weights to total mass 1.
  static RadialMeasure normalized(std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  std::size_t size() const noexcept { return atoms_.size(); }
  double max_radius() const noexcept { return atoms_.back().radius; }
  double min_radius() const noexcept { return atoms_.front().radius; }

  /// Total weight of atoms with inner <= radius <= outer.
  double mass(double inner, double outer) const;
  /// sum_k w_k rho_k^p
  double radial_moment(double p) const;
  /// Renormalized restriction to atoms with inner <= radius <= outer.
  RadialMeasure restricted(double inner, double outer) const;

 private:
  std::vector<Atom> atoms_;
};

nlohmann::json to_json(const RadialMeasure& mu);
RadialMeasure radial_measure_from_json(const nlohmann::json& j);

/// An orthogonal projection p_i together with its nominal weight t_i.
struct BlockProjection {
  CMatrix projection;
  double weight;
  Index offset;  ///< first basis index of the block
  Index size;    ///< rank of the projection
};

/// Z = D + c T with D diagonal and T strictly upper triangular.
struct MatrixModel {
  CMatrix Z;
  CMatrix D;
  CMatrix T;
  double c = 0.0;
  std::vector<BlockProjection> blocks;

  Index dim() const { return Z.rows(); }
};

/// Largest-remainder apportionment of weights to integer counts summing to n.
std::vector<Index> apportion(std::span<const double> weights, Index n);

/// Hermitian N x N with E|X_ij|^2 = 1/N (complex off the diagonal, real on it).
CMatrix sample_gue(Index n, std::uint64_t seed);

/// Strictly upper triangular N x N with iid complex Gaussian entries of
/// variance 1/N above the diagonal.
CMatrix sample_ut(Index n, std::uint64_t seed);

/// Diagonal matrix whose entries realize mu: each atom occupies a contiguous
/// block with equally spaced phases (offset drawn from the seed).
CMatrix diag_from_measure(const RadialMeasure& mu, Index n, std::uint64_t seed);

MatrixModel build_dt(const RadialMeasure& mu, double c, Index n, std::uint64_t seed);

struct BlockPart {
  RadialMeasure measure;
  double weight;
};

/// Block upper-triangular DT(sum t_i mu_i, c) model.  Diagonal blocks come
/// from an independent semicircular sample, off-diagonal blocks from a second
/// one; the block projections are returned in `blocks`.
MatrixModel build_block_dt(std::span<const BlockPart> parts, double c, Index n, std::uint64_t seed);

/// Y = sum_i p_i Xt p_i + sum_{i<j} (p_i X p_j + p_j X p_i).
CMatrix semicircular_mix(const CMatrix& xtilde, const CMatrix& x, std::span<const CMatrix> projections);

/// Strictly upper triangular part (zero on and below the diagonal).
CMatrix strict_upper(const CMatrix& a);

/// Throws matrix_lab.nonfinite if any entry is NaN or infinite.
void require_finite(const CMatrix& a, const char* what);

/// Checks Z = D + cT and the block projection invariants; throws on failure.
void validate(const MatrixModel& model);

}  // namespace dtlab
