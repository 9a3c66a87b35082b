#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace kramers {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed matrix or vector (non-square, empty, NaN/Inf).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Defective (Jordan-block) input, detected by eigenvector conditioning or
/// by a cluster whose eigenspace is smaller than its algebraic multiplicity.
class NotDiagonalizable : public Error {
 public:
  NotDiagonalizable(std::string msg, double condition)
      : Error(std::move(msg)), condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// A complex eigenvalue without a conjugate partner of equal multiplicity.
class NotPseudohermitianSpectrum : public Error {
 public:
  using Error::Error;
};

struct OddGroup {
  double value;
  int multiplicity;
};

class OddDegeneracy : public Error {
 public:
  OddDegeneracy(std::string msg, std::vector<OddGroup> groups)
      : Error(std::move(msg)), groups_(std::move(groups)) {}
  const std::vector<OddGroup>& groups() const noexcept { return groups_; }

 private:
  std::vector<OddGroup> groups_;
};

class SingularEta : public Error {
 public:
  using Error::Error;
};

/// exp(|Im E|·|t|) would leave the double exponent range.
class EvolutionRangeError : public Error {
 public:
  using Error::Error;
};

/// k2·ω2 − 2μB vanishes: the coupling ratio is undefined.
class DegenerateModel : public Error {
 public:
  using Error::Error;
};

/// Vanishing half-splitting: the two model eigenvalues coincide.
class RZero : public Error {
 public:
  using Error::Error;
};

/// Closed-form η requested outside the real-spectrum regime.
class ComplexSpectrumRegime : public Error {
 public:
  using Error::Error;
};

}  // namespace kramers
