#include "dtlab/brown_hs.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/QR>
#include <Eigen/SVD>
#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"

namespace dtlab {

std::vector<Complex> brown_empirical(const CMatrix& z) { return eigenvalues(z); }

double brown_mass(const std::vector<Complex>& points, const Region& region) {
  if (points.empty()) return 0.0;
  const auto inside = std::count_if(points.begin(), points.end(), [&](Complex p) { return region.contains(p); });
  return static_cast<double>(inside) / static_cast<double>(points.size());
}

Index count_in_region(const SchurForm& form, const Region& region) {
  Index count = 0;
  for (Index i = 0; i < form.U.rows(); ++i) {
    const Complex lambda = form.U(i, i);
    if (region.boundary_distance(lambda) < kBoundaryTolerance) {
      throw_numerical("brown_hs.boundary_ambiguity",
                      "eigenvalue of modulus " + std::to_string(std::abs(lambda)) + " lies on the boundary of " +
                          region.to_string());
    }
    if (region.contains(lambda)) ++count;
  }
  return count;
}

HSProjection hs_projection(const SchurForm& form, const Region& region, std::shared_ptr<const CMatrix> source) {
  const Index expected = count_in_region(form, region);
  const OrderedSchur ordered = reorder_schur(form, [&](Complex z) { return region.contains(z); });
  if (ordered.k != expected) {
    throw_numerical("brown_hs.reorder", "reordered Schur form lost track of the selected eigenvalues");
  }
  HSProjection out;
  out.basis = ordered.Q.leftCols(ordered.k);
  out.P = out.basis * out.basis.adjoint();
  out.rank = ordered.k;
  out.region = region;
  out.source = std::move(source);
  return out;
}

HSProjection hs_projection(const CMatrix& z, const Region& region) {
  return hs_projection(schur(z), region, std::make_shared<const CMatrix>(z));
}

double invariance_residual(const CMatrix& z, const HSProjection& p) {
  if (p.rank == 0) return 0.0;
  const CMatrix zq = z * p.basis;
  return op_norm(zq - p.basis * (p.basis.adjoint() * zq));
}

double angle_cos_bases(const CMatrix& a, const CMatrix& b) {
  if (a.cols() == 0 || b.cols() == 0) throw_config("brown_hs.zero_projection", "angle with a zero projection");
  return std::min(1.0, op_norm(a.adjoint() * b));
}

double angle_cos(const HSProjection& p, const HSProjection& q) { return angle_cos_bases(p.basis, q.basis); }

double subspace_distance(const CMatrix& a, const CMatrix& b) {
  if (a.cols() != b.cols()) return 1.0;
  if (a.cols() == 0) return 0.0;
  return std::min(1.0, op_norm(b - a * (a.adjoint() * b)));
}

CMatrix leading_left_singular_vectors(const CMatrix& columns, Index rank) {
  if (rank == 0 || columns.cols() == 0) return CMatrix(columns.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(columns, Eigen::ComputeThinU);
  return svd.matrixU().leftCols(rank);
}

LatticeReport check_lattice(const CMatrix& z, const Region& b1, const Region& b2, double tolerance) {
  const SchurForm form = schur(z);
  const HSProjection p1 = hs_projection(form, b1);
  const HSProjection p2 = hs_projection(form, b2);
  const HSProjection pu = hs_projection(form, b1 | b2);
  const HSProjection pi = hs_projection(form, b1 & b2);

  LatticeReport r;
  r.union_rank = pu.rank;
  r.intersection_rank = pi.rank;

  CMatrix joined(z.rows(), p1.rank + p2.rank);
  joined << p1.basis, p2.basis;
  if (joined.cols() > 0) {
    Eigen::JacobiSVD<CMatrix> svd(joined, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    r.union_excess = pu.rank < s.size() ? s(pu.rank) / s(0) : 0.0;
    r.union_distance = subspace_distance(svd.matrixU().leftCols(pu.rank), pu.basis);
  } else {
    r.union_distance = pu.rank == 0 ? 0.0 : 1.0;
  }

  if (p1.rank > 0 && p2.rank > 0) {
    Eigen::JacobiSVD<CMatrix> svd(p1.basis.adjoint() * p2.basis, Eigen::ComputeThinU);
    const auto& s = svd.singularValues();
    if (pi.rank > s.size()) {
      r.intersection_distance = 1.0;
    } else {
      r.intersection_cos = pi.rank > 0 ? s(pi.rank - 1) : 1.0;
      const CMatrix claimed = p1.basis * svd.matrixU().leftCols(pi.rank);
      r.intersection_distance = subspace_distance(claimed, pi.basis);
      r.intersection_leak = op_norm(claimed - p2.basis * (p2.basis.adjoint() * claimed));
    }
  } else {
    r.intersection_distance = pi.rank == 0 ? 0.0 : 1.0;
  }
  r.pass = r.union_distance < tolerance && r.union_excess < tolerance && r.intersection_distance < tolerance &&
           r.intersection_leak < tolerance;
  return r;
}

namespace {

double hausdorff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  auto directed = [](const std::vector<Complex>& from, const std::vector<Complex>& to) {
    double worst = 0.0;
    for (Complex p : from) {
      double best = std::numeric_limits<double>::infinity();
      for (Complex q : to) best = std::min(best, std::abs(p - q));
      worst = std::max(worst, best);
    }
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

}  // namespace

SimilarityReport check_similarity(const CMatrix& z, const CMatrix& a, const Region& b, double tolerance) {
  SimilarityReport r;
  r.condition = condition_number(a);
  if (!(r.condition < 1e8)) throw_config("brown_hs.similarity", "similarity condition number must be below 1e8");
  const CMatrix a_inv = inverse(a);
  const CMatrix similar = a * z * a_inv;

  const SchurForm form = schur(z);
  const SchurForm form_similar = schur(similar);
  std::vector<Complex> ev, ev_similar;
  for (Index i = 0; i < z.rows(); ++i) {
    ev.push_back(form.U(i, i));
    ev_similar.push_back(form_similar.U(i, i));
  }
  r.eigenvalue_distance = hausdorff(ev, ev_similar);

  const HSProjection p = hs_projection(form, b);
  const HSProjection p_similar = hs_projection(form_similar, b);
  if (p.rank != p_similar.rank) {
    r.subspace_distance = 1.0;
  } else if (p.rank > 0) {
    Eigen::HouseholderQR<CMatrix> qr(a * p.basis);
    const CMatrix transported = qr.householderQ() * CMatrix::Identity(z.rows(), p.rank);
    r.subspace_distance = subspace_distance(transported, p_similar.basis);
  }
  const double scale = std::max(op_norm(z), std::numeric_limits<double>::min());
  r.pass = r.eigenvalue_distance < tolerance * scale && r.subspace_distance < tolerance;
  return r;
}

std::vector<double> sot_qn_decay(const CMatrix& t, int n_max) {
  std::vector<double> out;
  CMatrix power = CMatrix::Identity(t.rows(), t.cols());
  for (int n = 1; n <= n_max; ++n) {
    power = power * t;
    const double norm = op_norm(power);
    out.push_back(norm == 0.0 ? 0.0 : std::pow(norm, 1.0 / n));
  }
  return out;
}

MembershipCertificate hs_membership_certificate(const CMatrix& z, double r, const CVector& xi, int n_max) {
  if (n_max < 1) throw_config("brown_hs.certificate", "n_max must be positive");
  if (std::abs(xi.norm() - 1.0) > 1e-8) throw_config("brown_hs.certificate", "xi must be a unit vector");
  MembershipCertificate cert;
  cert.radius = r;
  CVector v = xi;
  for (int n = 1; n <= n_max; ++n) {
    v = z * v;
    const double norm = v.norm();
    cert.sequence.push_back(norm == 0.0 ? 0.0 : std::pow(norm, 1.0 / n));
  }
  const std::size_t tail = std::max<std::size_t>(1, cert.sequence.size() / 4);
  cert.tail_max = *std::max_element(cert.sequence.end() - static_cast<std::ptrdiff_t>(tail), cert.sequence.end());
  cert.pass = cert.tail_max <= r * 1.05;
  return cert;
}

nlohmann::json to_json(const LatticeReport& r) {
  return {{"union_rank", r.union_rank},
          {"intersection_rank", r.intersection_rank},
          {"union_distance", r.union_distance},
          {"union_excess", r.union_excess},
          {"intersection_distance", r.intersection_distance},
          {"intersection_cos", r.intersection_cos},
          {"intersection_leak", r.intersection_leak},
          {"pass", r.pass}};
}

nlohmann::json to_json(const SimilarityReport& r) {
  return {{"condition", r.condition},
          {"eigenvalue_distance", r.eigenvalue_distance},
          {"subspace_distance", r.subspace_distance},
          {"pass", r.pass}};
}

nlohmann::json to_json(const MembershipCertificate& c) {
  return {{"sequence", c.sequence}, {"tail_max", c.tail_max}, {"radius", c.radius}, {"pass", c.pass}};
}

}  // namespace dtlab
