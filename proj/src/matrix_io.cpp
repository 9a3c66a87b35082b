#include "kramers/matrix_io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace kramers {

namespace {

double parse_real(std::string_view s, std::string_view token) {
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    throw ParseError("malformed complex token '" + std::string(token) + "'");
  return value;
}

// Coefficient of i: "", "+" and "-" stand for ±1.
double parse_imag(std::string_view s, std::string_view token) {
  if (s.empty() || s == "+") return 1.0;
  if (s == "-") return -1.0;
  return parse_real(s, token);
}

}  // namespace

Complex parse_complex(std::string_view token) {
  if (token.empty()) throw ParseError("empty complex token");
  if (token.back() != 'i') return {parse_real(token, token), 0.0};

  const std::string_view body = token.substr(0, token.size() - 1);
  // The real/imaginary split is the last sign that is not the leading sign
  // and not part of an exponent.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if ((body[k] == '+' || body[k] == '-') && body[k - 1] != 'e' && body[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  if (split == std::string_view::npos) return {0.0, parse_imag(body, token)};
  return {parse_real(body.substr(0, split), token), parse_imag(body.substr(split), token)};
}

Matrix read_matrix(std::istream& in) {
  std::string token;
  if (!(in >> token)) throw ParseError("missing matrix dimension");
  long long dim = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), dim);
  if (ec != std::errc() || ptr != token.data() + token.size() || dim <= 0)
    throw ParseError("matrix dimension must be a positive integer, got '" + token + "'");

  Matrix m(dim, dim);
  for (Index r = 0; r < dim; ++r) {
    for (Index c = 0; c < dim; ++c) {
      if (!(in >> token)) {
        std::ostringstream os;
        os << "expected " << dim * dim << " entries, found " << r * dim + c;
        throw ParseError(os.str());
      }
      m(r, c) = parse_complex(token);
    }
  }
  if (in >> token) throw ParseError("trailing token '" + token + "' after matrix entries");
  return m;
}

Matrix read_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path + "'");
  return read_matrix(in);
}

std::string format_complex(Complex z) {
  char buf[64];
  if (z.imag() == 0.0) {
    std::snprintf(buf, sizeof buf, "%.17g", z.real());
  } else {
    std::snprintf(buf, sizeof buf, "%.17g%+.17gi", z.real(), z.imag());
  }
  return buf;
}

void write_matrix(std::ostream& out, const Matrix& m) {
  out << m.rows() << '\n';
  for (Index r = 0; r < m.rows(); ++r) {
    for (Index c = 0; c < m.cols(); ++c) out << (c ? " " : "") << format_complex(m(r, c));
    out << '\n';
  }
}

}  // namespace kramers
