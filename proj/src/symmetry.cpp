#include "kramers/symmetry.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "kramers/errors.hpp"

namespace kramers {

AntilinearOperator::AntilinearOperator(Matrix linear) : linear_(std::move(linear)) {
  require_square_finite(linear_, "AntilinearOperator");
}

Vector AntilinearOperator::apply(const Vector& v) const {
  require_dim(v, dim(), "AntilinearOperator::apply");
  return linear_ * v.conjugate();
}

Matrix AntilinearOperator::compose(const AntilinearOperator& other) const {
  if (other.dim() != dim()) throw DimensionMismatch("AntilinearOperator::compose: dimension mismatch");
  return linear_ * other.linear_.conjugate();
}

EtaOperator::EtaOperator(Matrix eta) : eta_(std::move(eta)) {
  require_square_finite(eta_, "EtaOperator");
  const double asym = (eta_ - eta_.adjoint()).norm();
  if (asym > 1e-10 * std::max(1.0, eta_.norm())) throw InvalidInput("EtaOperator: matrix is not Hermitian");
  eta_ = (0.5 * (eta_ + eta_.adjoint())).eval();
}

EtaOperator construct_eta(const BiorthonormalSystem& system, const SpectrumClassification& classification) {
  const Index n = system.dim();
  const auto& groups = system.groups();
  Matrix eta = Matrix::Zero(n, n);
  for (const auto& g : classification.real_groups) {
    const auto& grp = groups.at(g.source);
    const auto phi = system.phi().middleCols(grp.offset, grp.multiplicity);
    eta.noalias() += phi * phi.adjoint();
  }
  Matrix cross = Matrix::Zero(n, n);
  for (const auto& p : classification.conjugate_pairs) {
    const auto& up = groups.at(p.upper_source);
    const auto& lo = groups.at(p.lower_source);
    cross.noalias() += system.phi().middleCols(up.offset, up.multiplicity) *
                       system.phi().middleCols(lo.offset, lo.multiplicity).adjoint();
  }
  eta += cross + cross.adjoint();
  return EtaOperator(0.5 * (eta + eta.adjoint()));
}

double verify_pseudohermitian(const Matrix& h, const EtaOperator& eta) {
  require_square_finite(h, "verify_pseudohermitian");
  const Matrix& e = eta.matrix();
  if (e.rows() != h.rows()) throw DimensionMismatch("verify_pseudohermitian: eta and H differ in dimension");
  Eigen::JacobiSVD<Matrix> svd(e);
  const auto& s = svd.singularValues();
  const double eps = std::numeric_limits<double>::epsilon();
  if (!(s(s.size() - 1) > static_cast<double>(e.rows()) * eps * s(0)))
    throw SingularEta("verify_pseudohermitian: eta is singular at working precision");
  // η H η⁻¹ = H†  ⇔  (η H η⁻¹)† = η⁻¹ H† η; solve η X = η H instead of inverting.
  const Matrix lhs = e.partialPivLu().solve((e * h).adjoint()).adjoint();
  return (lhs - h.adjoint()).norm() / std::max(1.0, frobenius(h));
}

AntilinearOperator construct_T(const BiorthonormalSystem& system,
                               const SpectrumClassification& classification) {
  std::vector<OddGroup> odd;
  for (const auto& g : classification.real_groups)
    if (g.multiplicity % 2 != 0) odd.push_back({g.value, static_cast<int>(g.multiplicity)});
  if (!odd.empty()) {
    std::ostringstream os;
    os << "construct_T: real eigenvalue(s) with odd degeneracy:";
    for (const auto& g : odd) os << " (" << g.value << ", d=" << g.multiplicity << ")";
    throw OddDegeneracy(os.str(), std::move(odd));
  }

  const Index n = system.dim();
  const auto& groups = system.groups();
  const Matrix& psi = system.psi();
  const Matrix& phi = system.phi();
  Matrix a = Matrix::Zero(n, n);
  for (const auto& g : classification.real_groups) {
    const auto& grp = groups.at(g.source);
    const Index half = grp.multiplicity / 2;
    const auto psi_lo = psi.middleCols(grp.offset, half);
    const auto psi_hi = psi.middleCols(grp.offset + half, half);
    const auto phi_lo = phi.middleCols(grp.offset, half);
    const auto phi_hi = phi.middleCols(grp.offset + half, half);
    a.noalias() += psi_lo * phi_hi.transpose();
    a.noalias() -= psi_hi * phi_lo.transpose();
  }
  for (const auto& p : classification.conjugate_pairs) {
    const auto& up = groups.at(p.upper_source);
    const auto& lo = groups.at(p.lower_source);
    a.noalias() += psi.middleCols(lo.offset, lo.multiplicity) * phi.middleCols(up.offset, up.multiplicity).transpose();
    a.noalias() -= psi.middleCols(up.offset, up.multiplicity) * phi.middleCols(lo.offset, lo.multiplicity).transpose();
  }
  return AntilinearOperator(std::move(a));
}

Vector apply_antilinear(const AntilinearOperator& t, const Vector& v) { return t.apply(v); }

double commutator_residual(const Matrix& h, const AntilinearOperator& t) {
  require_square_finite(h, "commutator_residual");
  if (h.rows() != t.dim()) throw DimensionMismatch("commutator_residual: dimension mismatch");
  return (h * t.linear() - t.linear() * h.conjugate()).norm() / std::max(1.0, frobenius(h));
}

double square_residual(const AntilinearOperator& t) {
  return (t.square() + Matrix::Identity(t.dim(), t.dim())).norm();
}

KramersReport kramers_test(const Matrix& h, double tol) {
  DiagonalizeOptions opts;
  opts.tol = tol;
  return kramers_test(h, biorthonormal_system(h, opts), tol);
}

KramersReport kramers_test(const Matrix& h, const BiorthonormalSystem& system, double tol) {
  KramersReport report;
  report.tolerance = tol;

  std::optional<SpectrumClassification> classification;
  try {
    classification = classify_spectrum(system, tol);
    report.pseudohermitian = true;
    report.real_degeneracies = classification->real_groups;
  } catch (const NotPseudohermitianSpectrum&) {
    report.pseudohermitian = false;
    const auto& groups = system.groups();
    for (std::size_t i = 0; i < groups.size(); ++i) {
      const Complex e = groups[i].value;
      if (std::abs(e.imag()) <= tol * std::max(1.0, std::abs(e)))
        report.real_degeneracies.push_back({e.real(), groups[i].multiplicity, i});
    }
  }

  report.all_even = true;
  for (const auto& g : report.real_degeneracies) report.all_even = report.all_even && g.multiplicity % 2 == 0;

  if (report.pseudohermitian && report.all_even) {
    auto witness = construct_T(system, *classification);
    const KramersResiduals r{commutator_residual(h, witness), square_residual(witness)};
    report.witness_certified = r.commutator <= tol && r.square <= tol * static_cast<double>(system.dim());
    report.residuals = r;
    report.witness = std::move(witness);
  }
  return report;
}

}  // namespace kramers
