#pragma once

#include <istream>
#include <string>
#include <string_view>

#include "kramers/errors.hpp"
#include "kramers/types.hpp"

namespace kramers {

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Parses "a", "bi", "a+bi", "a-bi" (also "i", "-i", exponents like "1e-3+2.5e2i").
Complex parse_complex(std::string_view token);

/// Matrix file: dimension, then dim² whitespace-separated complex tokens in
/// row-major order.
Matrix read_matrix(std::istream& in);
Matrix read_matrix_file(const std::string& path);

/// Inverse of parse_complex with 17 significant digits.
std::string format_complex(Complex z);
void write_matrix(std::ostream& out, const Matrix& m);

}  // namespace kramers
