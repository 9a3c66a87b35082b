#include "kramers/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "kramers/errors.hpp"
#include "kramers/spectral.hpp"
#include "kramers/symmetry.hpp"

namespace kramers {

double round_sig12(double x) {
  if (!std::isfinite(x)) return x;
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

namespace {

using json = nlohmann::ordered_json;

Complex round_c(Complex z) { return {round_sig12(z.real()), round_sig12(z.imag())}; }

Matrix round_m(const Matrix& m) { return m.unaryExpr([](const Complex& z) { return round_c(z); }); }

std::optional<double> round_opt(std::optional<double> x) {
  if (x) return round_sig12(*x);
  return x;
}

json complex_json(Complex z) { return json::array({round_sig12(z.real()), round_sig12(z.imag())}); }

Complex complex_from(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json matrix_json(const std::optional<Matrix>& m) {
  if (!m) return nullptr;
  json rows = json::array();
  for (Index r = 0; r < m->rows(); ++r) {
    json row = json::array();
    for (Index c = 0; c < m->cols(); ++c) row.push_back(complex_json((*m)(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::optional<Matrix> matrix_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  const auto n = static_cast<Index>(j.size());
  Matrix m(n, n);
  for (Index r = 0; r < n; ++r) {
    const auto& row = j.at(r);
    if (static_cast<Index>(row.size()) != n) throw InvalidInput("report: matrix is not square");
    for (Index c = 0; c < n; ++c) m(r, c) = complex_from(row.at(c));
  }
  return m;
}

json opt_json(const std::optional<double>& x) { return x ? json(round_sig12(*x)) : json(nullptr); }

std::optional<double> opt_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

json levels_json(const std::vector<LevelEntry>& levels) {
  json arr = json::array();
  for (const auto& l : levels) arr.push_back({{"value", complex_json(l.value)}, {"multiplicity", l.multiplicity}});
  return arr;
}

std::vector<LevelEntry> levels_from(const json& j) {
  std::vector<LevelEntry> out;
  for (const auto& e : j) out.push_back({complex_from(e.at("value")), e.at("multiplicity").get<Index>()});
  return out;
}

bool same(const std::optional<Matrix>& a, const std::optional<Matrix>& b) {
  if (a.has_value() != b.has_value()) return false;
  if (!a) return true;
  return a->rows() == b->rows() && a->cols() == b->cols() && *a == *b;
}

std::vector<LevelEntry> round_levels(std::vector<LevelEntry> v) {
  for (auto& l : v) l.value = round_c(l.value);
  return v;
}

}  // namespace

bool operator==(const KramersSection& a, const KramersSection& b) {
  return a.all_even == b.all_even && a.real_degeneracies == b.real_degeneracies && same(a.witness, b.witness) &&
         a.commutator_residual == b.commutator_residual && a.square_residual == b.square_residual &&
         a.witness_certified == b.witness_certified;
}

bool operator==(const AnalysisReport& a, const AnalysisReport& b) {
  return a.tool_version == b.tool_version && a.tolerance == b.tolerance && a.dim == b.dim &&
         a.condition == b.condition && a.eigenvalues == b.eigenvalues && a.pseudohermitian == b.pseudohermitian &&
         a.real_groups == b.real_groups && a.conjugate_pairs == b.conjugate_pairs && same(a.eta, b.eta) &&
         a.eta_residual == b.eta_residual && a.kramers == b.kramers;
}

AnalysisReport canonical(const AnalysisReport& r) {
  AnalysisReport c = r;
  c.tolerance = round_sig12(r.tolerance);
  c.condition = round_sig12(r.condition);
  c.eigenvalues = round_levels(r.eigenvalues);
  c.real_groups = round_levels(r.real_groups);
  for (auto& p : c.conjugate_pairs) {
    p.upper = round_c(p.upper);
    p.lower = round_c(p.lower);
  }
  if (c.eta) c.eta = round_m(*c.eta);
  c.eta_residual = round_opt(r.eta_residual);
  c.kramers.real_degeneracies = round_levels(r.kramers.real_degeneracies);
  if (c.kramers.witness) c.kramers.witness = round_m(*c.kramers.witness);
  c.kramers.commutator_residual = round_opt(r.kramers.commutator_residual);
  c.kramers.square_residual = round_opt(r.kramers.square_residual);
  return c;
}

nlohmann::ordered_json to_json(const AnalysisReport& r) {
  json pairs = json::array();
  for (const auto& p : r.conjugate_pairs)
    pairs.push_back({{"upper", complex_json(p.upper)}, {"lower", complex_json(p.lower)}, {"multiplicity", p.multiplicity}});

  json j;
  j["tool_version"] = r.tool_version;
  j["tolerance"] = round_sig12(r.tolerance);
  j["dim"] = r.dim;
  j["condition"] = round_sig12(r.condition);
  j["eigenvalues"] = levels_json(r.eigenvalues);
  j["pseudohermitian"] = r.pseudohermitian;
  j["classification"] = {{"real_groups", levels_json(r.real_groups)}, {"conjugate_pairs", pairs}};
  j["eta"] = {{"matrix", matrix_json(r.eta)}, {"residual", opt_json(r.eta_residual)}};
  j["kramers"] = {
      {"all_even", r.kramers.all_even},
      {"real_degeneracies", levels_json(r.kramers.real_degeneracies)},
      {"witness", matrix_json(r.kramers.witness)},
      {"commutator_residual", opt_json(r.kramers.commutator_residual)},
      {"square_residual", opt_json(r.kramers.square_residual)},
      {"witness_certified", r.kramers.witness_certified},
  };
  return j;
}

AnalysisReport report_from_json(const nlohmann::ordered_json& j) {
  AnalysisReport r;
  r.tool_version = j.at("tool_version").get<std::string>();
  r.tolerance = j.at("tolerance").get<double>();
  r.dim = j.at("dim").get<Index>();
  r.condition = j.at("condition").get<double>();
  r.eigenvalues = levels_from(j.at("eigenvalues"));
  r.pseudohermitian = j.at("pseudohermitian").get<bool>();
  const auto& cls = j.at("classification");
  r.real_groups = levels_from(cls.at("real_groups"));
  for (const auto& p : cls.at("conjugate_pairs"))
    r.conjugate_pairs.push_back(
        {complex_from(p.at("upper")), complex_from(p.at("lower")), p.at("multiplicity").get<Index>()});
  r.eta = matrix_from(j.at("eta").at("matrix"));
  r.eta_residual = opt_from(j.at("eta").at("residual"));
  const auto& k = j.at("kramers");
  r.kramers.all_even = k.at("all_even").get<bool>();
  r.kramers.real_degeneracies = levels_from(k.at("real_degeneracies"));
  r.kramers.witness = matrix_from(k.at("witness"));
  r.kramers.commutator_residual = opt_from(k.at("commutator_residual"));
  r.kramers.square_residual = opt_from(k.at("square_residual"));
  r.kramers.witness_certified = k.at("witness_certified").get<bool>();
  return r;
}

AnalysisReport analyze_matrix(const Matrix& h, double tol) {
  DiagonalizeOptions opts;
  opts.tol = tol;
  const auto dec = diagonalize(h, opts);
  const Index n = h.rows();
  const BiorthonormalSystem system(dec.groups, dec.vectors,
                                   dec.vectors.partialPivLu().solve(Matrix::Identity(n, n)).adjoint());

  AnalysisReport r;
  r.tolerance = tol;
  r.dim = n;
  r.condition = dec.condition;
  for (const auto& g : system.groups()) r.eigenvalues.push_back({g.value, g.multiplicity});

  const auto kr = kramers_test(h, system, tol);
  r.pseudohermitian = kr.pseudohermitian;
  if (kr.pseudohermitian) {
    const auto cls = classify_spectrum(system, tol);
    for (const auto& g : cls.real_groups) r.real_groups.push_back({g.value, g.multiplicity});
    for (const auto& p : cls.conjugate_pairs) r.conjugate_pairs.push_back({p.upper, p.lower, p.multiplicity});
    const auto eta = construct_eta(system, cls);
    r.eta = eta.matrix();
    try {
      r.eta_residual = verify_pseudohermitian(h, eta);
    } catch (const SingularEta&) {
      r.eta_residual = std::nullopt;
    }
  }
  r.kramers.all_even = kr.all_even;
  for (const auto& g : kr.real_degeneracies) r.kramers.real_degeneracies.push_back({g.value, g.multiplicity});
  if (kr.witness) r.kramers.witness = kr.witness->linear();
  if (kr.residuals) {
    r.kramers.commutator_residual = kr.residuals->commutator;
    r.kramers.square_residual = kr.residuals->square;
  }
  r.kramers.witness_certified = kr.witness_certified;
  return r;
}

}  // namespace kramers
