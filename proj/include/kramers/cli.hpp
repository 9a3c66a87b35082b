#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "kramers/spin_rotation.hpp"

namespace kramers::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kNumeric = 2,      // NotDiagonalizable, evolution range
  kInput = 3,        // parse errors, bad flags, bad grid
  kModelRegime = 4,  // DegenerateModel, RZero
};

/// Inclusive grid "start:stop:count" or a single value.
struct GridSpec {
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
  double at(int k) const;
};

/// Throws ParseError on malformed specs, count < 1 or start > stop.
GridSpec parse_grid(const std::string& text);

struct TimeGrid {
  double start = 0.0;
  double stop = 10.0;
  int count = 101;
};

struct ScanRow {
  double k1;
  double k2;
  double mu_b;
  bool condition9;
  std::string kramers_all_even;    // "true", "false" or "NA"
  std::string max_abs_asymmetry;  // 12 significant digits or "NA"
};

/// Evaluates one grid point; never throws for numerically degenerate points.
ScanRow scan_point(const spin_rotation::ModelParams& p, const GridSpec& times, double tol);

/// "%.12g".
std::string fmt(double x);
std::string fmt(Complex z);

/// Entry point shared by the executable and the tests.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace kramers::cli
