#include "kramers/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "kramers/errors.hpp"

namespace kramers {

void require_square_finite(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw InvalidInput(os.str());
  }
  if (!m.allFinite()) throw InvalidInput(std::string(what) + ": matrix has non-finite entries");
}

void require_dim(const Vector& v, Index dim, const char* what) {
  if (v.size() != dim) {
    std::ostringstream os;
    os << what << ": expected dimension " << dim << ", got " << v.size();
    throw DimensionMismatch(os.str());
  }
}

namespace {

double spectral_radius(std::span<const Complex> values) {
  double r = 0.0;
  for (const auto& v : values) r = std::max(r, std::abs(v));
  return r;
}

bool before(const Complex& a, const Complex& b) {
  if (a.real() != b.real()) return a.real() < b.real();
  return a.imag() < b.imag();
}

// Largest-magnitude component made real and positive.
void fix_phase(Eigen::Ref<Vector> v) {
  Index k = 0;
  v.cwiseAbs().maxCoeff(&k);
  const double mag = std::abs(v(k));
  if (mag > 0.0) v *= std::conj(v(k)) / mag;
}

}  // namespace

std::vector<SpectralValue> cluster_eigenvalues(std::span<const Complex> eigenvalues, double tol) {
  std::vector<Complex> sorted(eigenvalues.begin(), eigenvalues.end());
  std::stable_sort(sorted.begin(), sorted.end(), before);
  const double radius = tol * std::max(1.0, spectral_radius(eigenvalues));

  struct Cluster {
    Complex seed;
    Complex sum;
    Index count;
  };
  std::vector<Cluster> clusters;
  for (const auto& e : sorted) {
    auto it = std::find_if(clusters.begin(), clusters.end(),
                           [&](const Cluster& c) { return std::abs(c.seed - e) <= radius; });
    if (it == clusters.end()) {
      clusters.push_back({e, e, 1});
    } else {
      it->sum += e;
      ++it->count;
    }
  }

  std::vector<SpectralValue> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) out.push_back({c.sum / static_cast<double>(c.count), c.count});
  return out;
}

Eigendecomposition diagonalize(const Matrix& h, const DiagonalizeOptions& opts) {
  require_square_finite(h, "diagonalize");
  const Index n = h.rows();
  const double scale = std::max(1.0, frobenius(h));

  Eigen::ComplexEigenSolver<Matrix> solver(h, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) throw NotDiagonalizable("diagonalize: Schur iteration did not converge", INFINITY);
  const Vector raw = solver.eigenvalues();
  const auto levels = cluster_eigenvalues(std::span<const Complex>(raw.data(), raw.size()), opts.tol);

  Eigendecomposition out;
  out.eigenvalues.resize(n);
  out.vectors.resize(n, n);
  Index col = 0;
  for (const auto& level : levels) {
    const Matrix shifted = h - level.value * Matrix::Identity(n, n);
    Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullV);
    const auto& sigma = svd.singularValues();
    const Index d = level.multiplicity;
    // Singular values are sorted descending; the eigenspace is the tail.
    const double worst = sigma(n - d);
    if (worst > opts.residual_ceiling * scale) {
      std::ostringstream os;
      os << "diagonalize: eigenvalue " << level.value << " has algebraic multiplicity " << d
         << " but a smaller eigenspace (residual " << worst / scale << ")";
      throw NotDiagonalizable(os.str(), INFINITY);
    }
    out.vectors.middleCols(col, d) = svd.matrixV().rightCols(d);
    for (Index k = 0; k < d; ++k) {
      fix_phase(out.vectors.col(col + k));
      out.eigenvalues(col + k) = level.value;
    }
    out.groups.push_back({level.value, col, d});
    col += d;
  }

  Eigen::JacobiSVD<Matrix> vsvd(out.vectors);
  const auto& s = vsvd.singularValues();
  out.condition = s(n - 1) > 0.0 ? s(0) / s(n - 1) : INFINITY;
  if (!(out.condition <= opts.condition_ceiling)) {
    std::ostringstream os;
    os << "diagonalize: eigenvector matrix condition number " << out.condition
       << " exceeds ceiling " << opts.condition_ceiling;
    throw NotDiagonalizable(os.str(), out.condition);
  }
  return out;
}

BiorthonormalSystem::BiorthonormalSystem(std::vector<EigenGroup> groups, Matrix psi, Matrix phi)
    : groups_(std::move(groups)), psi_(std::move(psi)), phi_(std::move(phi)) {
  if (psi_.rows() != psi_.cols() || phi_.rows() != psi_.rows() || phi_.cols() != psi_.cols())
    throw DimensionMismatch("BiorthonormalSystem: psi and phi must be matching square matrices");
  Index next = 0;
  for (const auto& g : groups_) {
    if (g.offset != next || g.multiplicity <= 0)
      throw InvalidInput("BiorthonormalSystem: groups must tile the columns contiguously");
    next += g.multiplicity;
  }
  if (next != psi_.cols()) throw InvalidInput("BiorthonormalSystem: multiplicities must sum to the dimension");
}

Vector BiorthonormalSystem::column_eigenvalues() const {
  Vector e(dim());
  for (const auto& g : groups_) e.segment(g.offset, g.multiplicity).setConstant(g.value);
  return e;
}

BiorthonormalSystem biorthonormal_system(const Matrix& h, const DiagonalizeOptions& opts) {
  auto dec = diagonalize(h, opts);
  const Index n = h.rows();
  Matrix inverse = dec.vectors.partialPivLu().solve(Matrix::Identity(n, n));
  return BiorthonormalSystem(std::move(dec.groups), std::move(dec.vectors), inverse.adjoint());
}

Matrix reconstruct(const BiorthonormalSystem& system) {
  return system.psi() * system.column_eigenvalues().asDiagonal() * system.phi().adjoint();
}

double biorthonormality_residual(const BiorthonormalSystem& system) {
  const Index n = system.dim();
  return (system.phi().adjoint() * system.psi() - Matrix::Identity(n, n)).cwiseAbs().maxCoeff();
}

double completeness_residual(const BiorthonormalSystem& system) {
  const Index n = system.dim();
  return (system.psi() * system.phi().adjoint() - Matrix::Identity(n, n)).norm();
}

double eigen_residual(const Matrix& h, const BiorthonormalSystem& system) {
  const Vector e = system.column_eigenvalues();
  const Matrix right = h * system.psi() - system.psi() * e.asDiagonal();
  const Matrix left = h.adjoint() * system.phi() - system.phi() * e.conjugate().asDiagonal();
  double worst = 0.0;
  for (Index k = 0; k < system.dim(); ++k)
    worst = std::max({worst, right.col(k).norm(), left.col(k).norm()});
  return worst / std::max(1.0, frobenius(h));
}

Index SpectrumClassification::total_multiplicity() const {
  Index total = 0;
  for (const auto& g : real_groups) total += g.multiplicity;
  for (const auto& p : conjugate_pairs) total += 2 * p.multiplicity;
  return total;
}

SpectrumClassification classify_spectrum(std::span<const SpectralValue> levels, double tol) {
  SpectrumClassification out;
  out.tolerance_used = tol;

  std::vector<std::size_t> upper;
  std::vector<std::size_t> lower;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const Complex e = levels[i].value;
    if (!std::isfinite(e.real()) || !std::isfinite(e.imag()))
      throw InvalidInput("classify_spectrum: non-finite eigenvalue");
    if (levels[i].multiplicity <= 0) throw InvalidInput("classify_spectrum: multiplicity must be positive");
    if (std::abs(e.imag()) <= tol * std::max(1.0, std::abs(e))) {
      out.real_groups.push_back({e.real(), levels[i].multiplicity, i});
    } else {
      (e.imag() > 0.0 ? upper : lower).push_back(i);
    }
  }

  std::vector<bool> used(levels.size(), false);
  for (const auto u : upper) {
    const Complex target = std::conj(levels[u].value);
    std::size_t best = levels.size();
    double best_dist = INFINITY;
    for (const auto l : lower) {
      if (used[l]) continue;
      const double dist = std::abs(levels[l].value - target);
      if (dist < best_dist) {
        best_dist = dist;
        best = l;
      }
    }
    if (best == levels.size() || best_dist > tol * std::max(1.0, std::abs(target))) {
      std::ostringstream os;
      os << "complex eigenvalue " << levels[u].value << " has no conjugate partner";
      throw NotPseudohermitianSpectrum(os.str());
    }
    if (levels[best].multiplicity != levels[u].multiplicity) {
      std::ostringstream os;
      os << "conjugate eigenvalues " << levels[u].value << " and " << levels[best].value
         << " have multiplicities " << levels[u].multiplicity << " and " << levels[best].multiplicity;
      throw NotPseudohermitianSpectrum(os.str());
    }
    used[best] = true;
    out.conjugate_pairs.push_back(
        {levels[u].value, levels[best].value, levels[u].multiplicity, u, best});
  }
  for (const auto l : lower) {
    if (!used[l]) {
      std::ostringstream os;
      os << "complex eigenvalue " << levels[l].value << " has no conjugate partner";
      throw NotPseudohermitianSpectrum(os.str());
    }
  }
  return out;
}

SpectrumClassification classify_eigenvalues(std::span<const Complex> eigenvalues, double tol) {
  const auto levels = cluster_eigenvalues(eigenvalues, tol);
  return classify_spectrum(levels, tol);
}

SpectrumClassification classify_spectrum(const BiorthonormalSystem& system, double tol) {
  std::vector<SpectralValue> levels;
  levels.reserve(system.groups().size());
  for (const auto& g : system.groups()) levels.push_back({g.value, g.multiplicity});
  return classify_spectrum(levels, tol);
}

}  // namespace kramers
