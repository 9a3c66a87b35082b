#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "kramers/types.hpp"

namespace kramers {

inline constexpr const char* kToolVersion = "kramers 0.1.0";

/// Rounds to 12 significant digits; the report's canonical precision.
double round_sig12(double x);

struct LevelEntry {
  Complex value;
  Index multiplicity = 0;
  bool operator==(const LevelEntry&) const = default;
};

struct PairEntry {
  Complex upper;
  Complex lower;
  Index multiplicity = 0;
  bool operator==(const PairEntry&) const = default;
};

struct KramersSection {
  bool all_even = false;
  std::vector<LevelEntry> real_degeneracies;
  std::optional<Matrix> witness;
  std::optional<double> commutator_residual;
  std::optional<double> square_residual;
  bool witness_certified = false;
};

struct AnalysisReport {
  std::string tool_version = kToolVersion;
  double tolerance = kDefaultTolerance;
  Index dim = 0;
  double condition = 1.0;
  std::vector<LevelEntry> eigenvalues;
  bool pseudohermitian = false;
  std::vector<LevelEntry> real_groups;
  std::vector<PairEntry> conjugate_pairs;
  std::optional<Matrix> eta;
  std::optional<double> eta_residual;
  KramersSection kramers;
};

bool operator==(const KramersSection& a, const KramersSection& b);
bool operator==(const AnalysisReport& a, const AnalysisReport& b);

/// Copy with every floating value rounded to 12 significant digits.
AnalysisReport canonical(const AnalysisReport& r);

/// Stable field order; complex values as [re, im]; floats at 12 significant digits.
nlohmann::ordered_json to_json(const AnalysisReport& r);
AnalysisReport report_from_json(const nlohmann::ordered_json& j);

/// Runs diagonalization, classification, η construction and the Kramers test.
/// Throws NotDiagonalizable for defective input.
AnalysisReport analyze_matrix(const Matrix& h, double tol = kDefaultTolerance);

}  // namespace kramers
