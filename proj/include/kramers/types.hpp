#pragma once

#include <complex>

#include <Eigen/Dense>

namespace kramers {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Default relative tolerance shared by clustering, realness tests and residual gates.
inline constexpr double kDefaultTolerance = 1e-9;

/// Throws InvalidInput unless `m` is square, non-empty and finite.
void require_square_finite(const Matrix& m, const char* what);

/// Throws DimensionMismatch unless `v` has `dim` entries.
void require_dim(const Vector& v, Index dim, const char* what);

inline double frobenius(const Matrix& m) { return m.norm(); }

}  // namespace kramers
