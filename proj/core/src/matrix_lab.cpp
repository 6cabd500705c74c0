#include "dtlab/matrix_lab.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>

#include <nlohmann/json.hpp>

#include "dtlab/error.hpp"
#include "dtlab/seed.hpp"

namespace dtlab {

namespace {

constexpr double kWeightTolerance = 1e-12;

// Stream ids for derive_seed; fixed forever so seeds stay reproducible.
enum Stream : std::uint64_t {
  kStreamDiag = 1,
  kStreamUt = 2,
  kStreamDiagonalBlocks = 3,
  kStreamOffDiagonal = 4,
  kStreamBlockDiag = 5,
};

}  // namespace

RadialMeasure::RadialMeasure(std::vector<Atom> atoms) : atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw_config("matrix_lab.measure", "measure needs at least one atom");
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.radius < b.radius; });
  double total = 0.0;
  for (std::size_t k = 0; k < atoms_.size(); ++k) {
    const auto& a = atoms_[k];
    if (!(a.radius >= 0.0) || !std::isfinite(a.radius)) {
      throw_config("matrix_lab.measure", "atom radii must be finite and nonnegative");
    }
    if (!(a.weight > 0.0)) throw_config("matrix_lab.measure", "atom weights must be positive");
    if (k > 0 && !(a.radius > atoms_[k - 1].radius)) {
      throw_config("matrix_lab.measure", "atom radii must be distinct");
    }
    total += a.weight;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) {
    throw_config("matrix_lab.measure", "atom weights must sum to 1");
  }
}

RadialMeasure RadialMeasure::circle(double radius) { return RadialMeasure({{radius, 1.0}}); }

RadialMeasure RadialMeasure::uniform(std::vector<double> radii) {
  std::vector<Atom> atoms;
  for (double r : radii) atoms.push_back({r, 1.0});
  return normalized(std::move(atoms));
}

RadialMeasure RadialMeasure::normalized(std::vector<Atom> atoms) {
  double total = 0.0;
  for (const auto& a : atoms) total += a.weight;
  if (!(total > 0.0)) throw_config("matrix_lab.measure", "total weight must be positive");
  for (auto& a : atoms) a.weight /= total;
  // Absorb the rounding residue into the heaviest atom so the sum is 1 to the last bit.
  double sum = 0.0;
  for (const auto& a : atoms) sum += a.weight;
  if (!atoms.empty()) {
    auto heaviest = std::max_element(atoms.begin(), atoms.end(),
                                     [](const Atom& a, const Atom& b) { return a.weight < b.weight; });
    heaviest->weight += 1.0 - sum;
  }
  return RadialMeasure(std::move(atoms));
}

double RadialMeasure::mass(double inner, double outer) const {
  double m = 0.0;
  for (const auto& a : atoms_) {
    if (a.radius >= inner && a.radius <= outer) m += a.weight;
  }
  return m;
}

double RadialMeasure::radial_moment(double p) const {
  double m = 0.0;
  for (const auto& a : atoms_) m += a.weight * std::pow(a.radius, p);
  return m;
}

RadialMeasure RadialMeasure::restricted(double inner, double outer) const {
  std::vector<Atom> kept;
  for (const auto& a : atoms_) {
    if (a.radius >= inner && a.radius <= outer) kept.push_back(a);
  }
  if (kept.empty()) throw_config("matrix_lab.measure", "restriction to a null set");
  return normalized(std::move(kept));
}

nlohmann::json to_json(const RadialMeasure& mu) {
  auto arr = nlohmann::json::array();
  for (const auto& a : mu.atoms()) arr.push_back({{"radius", a.radius}, {"weight", a.weight}});
  return arr;
}

RadialMeasure radial_measure_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw_config("matrix_lab.measure", "measure must be a JSON array of atoms");
  std::vector<RadialMeasure::Atom> atoms;
  for (const auto& item : j) {
    if (!item.is_object() || !item.contains("radius") || !item.contains("weight")) {
      throw_config("matrix_lab.measure", "atom must be {\"radius\": r, \"weight\": w}");
    }
    atoms.push_back({item.at("radius").get<double>(), item.at("weight").get<double>()});
  }
  return RadialMeasure(std::move(atoms));
}

std::vector<Index> apportion(std::span<const double> weights, Index n) {
  std::vector<Index> counts(weights.size(), 0);
  std::vector<double> remainder(weights.size(), 0.0);
  Index assigned = 0;
  for (std::size_t k = 0; k < weights.size(); ++k) {
    const double exact = weights[k] * static_cast<double>(n);
    counts[k] = static_cast<Index>(std::floor(exact));
    remainder[k] = exact - static_cast<double>(counts[k]);
    assigned += counts[k];
  }
  std::vector<std::size_t> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return remainder[a] > remainder[b]; });
  for (std::size_t i = 0; assigned < n && i < order.size(); ++i, ++assigned) ++counts[order[i]];
  // Weights summing slightly below 1 can leave a deficit larger than the atom count.
  for (std::size_t i = 0; assigned < n; i = (i + 1) % order.size(), ++assigned) ++counts[order[i]];
  return counts;
}

CMatrix sample_gue(Index n, std::uint64_t seed) {
  if (n < 1) throw_config("matrix_lab.dim", "matrix size must be positive");
  std::mt19937_64 gen(seed);
  const double nd = static_cast<double>(n);
  std::normal_distribution<double> diag(0.0, std::sqrt(1.0 / nd));
  std::normal_distribution<double> part(0.0, std::sqrt(0.5 / nd));
  CMatrix x(n, n);
  for (Index i = 0; i < n; ++i) {
    x(i, i) = Complex(diag(gen), 0.0);
    for (Index j = i + 1; j < n; ++j) {
      const double re = part(gen);
      const double im = part(gen);
      x(i, j) = Complex(re, im);
      x(j, i) = Complex(re, -im);
    }
  }
  return x;
}

CMatrix sample_ut(Index n, std::uint64_t seed) {
  if (n < 1) throw_config("matrix_lab.dim", "matrix size must be positive");
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> part(0.0, std::sqrt(0.5 / static_cast<double>(n)));
  CMatrix t = CMatrix::Zero(n, n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = i + 1; j < n; ++j) {
      const double re = part(gen);
      const double im = part(gen);
      t(i, j) = Complex(re, im);
    }
  }
  return t;
}

CMatrix diag_from_measure(const RadialMeasure& mu, Index n, std::uint64_t seed) {
  if (n < static_cast<Index>(mu.size())) {
    throw_config("matrix_lab.resolution", "matrix size is smaller than the number of atoms");
  }
  std::vector<double> weights;
  for (const auto& a : mu.atoms()) weights.push_back(a.weight);
  const auto counts = apportion(weights, n);
  for (Index count : counts) {
    if (count == 0) throw_config("matrix_lab.resolution", "measure resolution exceeds N");
  }
  std::mt19937_64 gen(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double offset = unit(gen);

  CMatrix d = CMatrix::Zero(n, n);
  Index pos = 0;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    const double rho = mu.atoms()[k].radius;
    const double m = static_cast<double>(counts[k]);
    for (Index j = 0; j < counts[k]; ++j, ++pos) {
      const double theta = 2.0 * std::numbers::pi * (static_cast<double>(j) + offset) / m;
      d(pos, pos) = std::polar(rho, theta);
    }
  }
  return d;
}

MatrixModel build_dt(const RadialMeasure& mu, double c, Index n, std::uint64_t seed) {
  if (!(c >= 0.0) || !std::isfinite(c)) throw_config("matrix_lab.c", "c must be finite and nonnegative");
  MatrixModel m;
  m.D = diag_from_measure(mu, n, derive_seed(seed, kStreamDiag, 0));
  m.T = sample_ut(n, derive_seed(seed, kStreamUt, 0));
  m.c = c;
  m.Z = m.D + c * m.T;
  return m;
}

CMatrix strict_upper(const CMatrix& a) {
  CMatrix out = CMatrix::Zero(a.rows(), a.cols());
  out.triangularView<Eigen::StrictlyUpper>() = a.triangularView<Eigen::StrictlyUpper>();
  return out;
}

namespace {

// Block label of every basis index when all projections are diagonal 0/1
// matrices partitioning the identity; empty otherwise.
std::vector<int> diagonal_labels(std::span<const CMatrix> projections, Index n) {
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  for (std::size_t b = 0; b < projections.size(); ++b) {
    const CMatrix& p = projections[b];
    if (!p.isDiagonal(0.0)) return {};
    for (Index i = 0; i < n; ++i) {
      const Complex v = p(i, i);
      if (v == Complex(1.0, 0.0)) {
        if (label[static_cast<std::size_t>(i)] != -1) return {};
        label[static_cast<std::size_t>(i)] = static_cast<int>(b);
      } else if (v != Complex(0.0, 0.0)) {
        return {};
      }
    }
  }
  for (int l : label) {
    if (l < 0) return {};
  }
  return label;
}

}  // namespace

CMatrix semicircular_mix(const CMatrix& xtilde, const CMatrix& x, std::span<const CMatrix> projections) {
  const Index n = x.rows();
  if (x.cols() != n || xtilde.rows() != n || xtilde.cols() != n) {
    throw_config("matrix_lab.dim", "semicircular_mix: dimension mismatch");
  }
  for (const auto& p : projections) {
    if (p.rows() != n || p.cols() != n) throw_config("matrix_lab.dim", "semicircular_mix: projection size");
  }
  if (const auto label = diagonal_labels(projections, n); !label.empty()) {
    CMatrix y(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        y(i, j) = label[static_cast<std::size_t>(i)] == label[static_cast<std::size_t>(j)] ? xtilde(i, j)
                                                                                           : x(i, j);
      }
    }
    return y;
  }
  CMatrix y = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < projections.size(); ++i) {
    const CMatrix& pi = projections[i];
    y.noalias() += pi * xtilde * pi;
    for (std::size_t j = i + 1; j < projections.size(); ++j) {
      const CMatrix& pj = projections[j];
      y.noalias() += pi * x * pj;
      y.noalias() += pj * x * pi;
    }
  }
  return y;
}

MatrixModel build_block_dt(std::span<const BlockPart> parts, double c, Index n, std::uint64_t seed) {
  if (parts.empty()) throw_config("matrix_lab.blocks", "at least one part is required");
  if (!(c >= 0.0) || !std::isfinite(c)) throw_config("matrix_lab.c", "c must be finite and nonnegative");
  std::vector<double> weights;
  double total = 0.0;
  for (const auto& part : parts) {
    if (!(part.weight > 0.0)) throw_config("matrix_lab.blocks", "part weights must be positive");
    weights.push_back(part.weight);
    total += part.weight;
  }
  if (std::abs(total - 1.0) > kWeightTolerance) throw_config("matrix_lab.blocks", "part weights must sum to 1");
  const auto sizes = apportion(weights, n);
  for (Index s : sizes) {
    if (s < 2) throw_config("matrix_lab.blocks", "block size below 2; increase N");
  }

  MatrixModel m;
  m.c = c;
  std::vector<CMatrix> projections;
  m.D = CMatrix::Zero(n, n);
  Index offset = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    CMatrix p = CMatrix::Zero(n, n);
    p.diagonal().segment(offset, sizes[i]).setOnes();
    m.D.block(offset, offset, sizes[i], sizes[i]) =
        diag_from_measure(parts[i].measure, sizes[i], derive_seed(seed, kStreamBlockDiag, i));
    m.blocks.push_back({p, parts[i].weight, offset, sizes[i]});
    projections.push_back(std::move(p));
    offset += sizes[i];
  }
  const CMatrix xtilde = sample_gue(n, derive_seed(seed, kStreamDiagonalBlocks, 0));
  const CMatrix x = sample_gue(n, derive_seed(seed, kStreamOffDiagonal, 0));
  m.T = strict_upper(semicircular_mix(xtilde, x, projections));
  m.Z = m.D + c * m.T;
  return m;
}

void require_finite(const CMatrix& a, const char* what) {
  if (!a.allFinite()) throw_numerical("matrix_lab.nonfinite", std::string(what) + " has non-finite entries");
}

void validate(const MatrixModel& model) {
  const Index n = model.dim();
  require_finite(model.Z, "Z");
  if ((model.Z - model.D - model.c * model.T).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, model.Z.norm())) {
    throw_numerical("matrix_lab.model", "Z != D + cT");
  }
  if (!model.D.isDiagonal(0.0)) throw_numerical("matrix_lab.model", "D is not diagonal");
  if (model.blocks.empty()) return;
  CMatrix sum = CMatrix::Zero(n, n);
  for (const auto& b : model.blocks) {
    const CMatrix& p = b.projection;
    if ((p * p - p).cwiseAbs().maxCoeff() > 1e-10 || (p - p.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
      throw_numerical("matrix_lab.model", "block projection is not an orthogonal projection");
    }
    sum += p;
  }
  if ((sum - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-10) {
    throw_numerical("matrix_lab.model", "block projections do not sum to the identity");
  }
}

}  // namespace dtlab
