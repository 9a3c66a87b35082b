#include "kramers/cli.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <thread>

#include <CLI11.hpp>

#include "kramers/errors.hpp"
#include "kramers/evolution.hpp"
#include "kramers/matrix_io.hpp"
#include "kramers/report.hpp"
#include "kramers/spectral.hpp"
#include "kramers/symmetry.hpp"

namespace kramers::cli {

namespace sr = spin_rotation;

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string fmt(Complex z) {
  if (z.imag() == 0.0) return fmt(z.real());
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

double GridSpec::at(int k) const {
  if (count == 1) return start;
  return start + (stop - start) * static_cast<double>(k) / static_cast<double>(count - 1);
}

namespace {

double parse_double(std::string_view s, const std::string& whole) {
  double v = 0.0;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw ParseError("bad grid spec '" + whole + "'");
  return v;
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  GridSpec g;
  const auto first = text.find(':');
  if (first == std::string::npos) {
    g.start = g.stop = parse_double(text, text);
    return g;
  }
  const auto second = text.find(':', first + 1);
  if (second == std::string::npos || text.find(':', second + 1) != std::string::npos)
    throw ParseError("grid spec must be 'value' or 'start:stop:count', got '" + text + "'");
  g.start = parse_double(std::string_view(text).substr(0, first), text);
  g.stop = parse_double(std::string_view(text).substr(first + 1, second - first - 1), text);
  const std::string_view count = std::string_view(text).substr(second + 1);
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), g.count);
  if (count.empty() || ec != std::errc() || ptr != count.data() + count.size())
    throw ParseError("bad grid count in '" + text + "'");
  if (g.count < 1) throw ParseError("grid count must be at least 1 in '" + text + "'");
  if (g.start > g.stop) throw ParseError("grid start exceeds stop in '" + text + "'");
  return g;
}

ScanRow scan_point(const sr::ModelParams& p, const GridSpec& times, double tol) {
  ScanRow row{p.k1, p.k2, p.mu_b, sr::real_split_regime(p), "NA", "NA"};
  const Matrix h = sr::effective_hamiltonian(p);
  DiagonalizeOptions opts;
  opts.tol = tol;
  try {
    const auto system = biorthonormal_system(h, opts);
    row.kramers_all_even = kramers_test(h, system, tol).all_even ? "true" : "false";
    double worst = 0.0;
    for (int k = 0; k < times.count; ++k)
      worst = std::max(worst, std::abs(time_asymmetry(system, sr::minus_state(), sr::phi_state(), times.at(k))));
    row.max_abs_asymmetry = fmt(worst);
  } catch (const NotDiagonalizable&) {
  } catch (const EvolutionRangeError&) {
  }
  return row;
}

namespace {

struct ModelFlags {
  sr::ModelParams params{0.0, 0.0, 1.0, 1.0, 1.0};
  TimeGrid times;
  double tol = kDefaultTolerance;
  bool json = false;
};

std::string matrix_text(const Matrix& m) {
  std::string s = "[";
  for (Index r = 0; r < m.rows(); ++r) {
    s += r ? ", [" : "[";
    for (Index c = 0; c < m.cols(); ++c) s += (c ? ", " : "") + fmt(m(r, c));
    s += "]";
  }
  return s + "]";
}

int cmd_analyze(const std::string& path, double tol, std::ostream& out, std::ostream& err) {
  Matrix h;
  try {
    h = read_matrix_file(path);
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kInput;
  }
  try {
    const auto report = analyze_matrix(h, tol);
    out << to_json(report).dump(2) << '\n';
    return kOk;
  } catch (const NotDiagonalizable& e) {
    err << "NotDiagonalizable: " << e.what() << '\n';
    return kNumeric;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInput;
  }
}

int cmd_model(const ModelFlags& f, std::ostream& out, std::ostream& err) {
  const auto& p = f.params;
  if (f.times.count < 1 || f.times.start > f.times.stop) {
    err << "bad time grid: need start <= stop and count >= 1\n";
    return kInput;
  }
  const GridSpec times{f.times.start, f.times.stop, f.times.count};
  try {
    const Matrix h = sr::effective_hamiltonian(p);
    const Complex chi = sr::coupling_ratio(p);
    const Complex r = sr::half_splitting(p);
    sr::model_eigenbasis(p);  // raises DegenerateModel / RZero at the boundaries
    const bool regime = sr::real_split_regime(p);
    DiagonalizeOptions opts;
    opts.tol = f.tol;
    const auto system = biorthonormal_system(h, opts);
    const auto kr = kramers_test(h, system, f.tol);

    std::string eta_line = "unavailable (complex spectrum regime)";
    std::optional<double> eta_residual;
    try {
      const auto eta = sr::model_eta(p);
      eta_line = matrix_text(eta.matrix());
      eta_residual = verify_pseudohermitian(h, eta);
    } catch (const ComplexSpectrumRegime&) {
    }

    struct Sample {
      double t, flip, fwd, bwd;
    };
    std::vector<Sample> curve;
    double peak = 0.0;
    for (int k = 0; k < times.count; ++k) {
      const double t = times.at(k);
      const Sample s{t, transition_probability(system, sr::minus_state(), sr::plus_state(), t),
                     transition_probability(system, sr::minus_state(), sr::phi_state(), t),
                     transition_probability(system, sr::minus_state(), sr::phi_state(), -t)};
      peak = std::max({peak, s.flip, s.fwd, s.bwd});
      curve.push_back(s);
    }
    const bool hermitian = (h - h.adjoint()).norm() == 0.0;

    if (f.json) {
      nlohmann::ordered_json j;
      j["tool_version"] = kToolVersion;
      j["params"] = {{"E", p.energy}, {"muB", p.mu_b}, {"omega2", p.omega2}, {"k1", p.k1}, {"k2", p.k2}};
      j["hermitian"] = hermitian;
      j["chi"] = {round_sig12(chi.real()), round_sig12(chi.imag())};
      j["R"] = {round_sig12(r.real()), round_sig12(r.imag())};
      j["condition9"] = regime;
      j["eigenvalues"] = nlohmann::ordered_json::array();
      for (const auto& g : system.groups())
        j["eigenvalues"].push_back({round_sig12(g.value.real()), round_sig12(g.value.imag())});
      j["eta_residual"] = eta_residual ? nlohmann::ordered_json(round_sig12(*eta_residual)) : nullptr;
      j["kramers_all_even"] = kr.all_even;
      j["probability_exceeds_one"] = peak > 1.0;
      auto& rows = j["curve"] = nlohmann::ordered_json::array();
      for (const auto& s : curve)
        rows.push_back({round_sig12(s.t), round_sig12(s.flip), round_sig12(s.fwd), round_sig12(s.bwd),
                        round_sig12(s.fwd - s.bwd)});
      out << j.dump(2) << '\n';
      return kOk;
    }

    out << "# tool: " << kToolVersion << '\n';
    out << "# params: E=" << fmt(p.energy) << " muB=" << fmt(p.mu_b) << " omega2=" << fmt(p.omega2)
        << " k1=" << fmt(p.k1) << " k2=" << fmt(p.k2) << '\n';
    if (hermitian) out << "# hermitian: true (k1 = k2, unitary evolution)\n";
    else out << "# hermitian: false\n";
    out << "# H_eff: " << matrix_text(h) << '\n';
    out << "# eigenvalues:";
    for (const auto& g : system.groups()) out << ' ' << fmt(g.value);
    out << '\n';
    out << "# chi: " << fmt(chi) << '\n';
    out << "# R: " << fmt(r) << '\n';
    out << "# condition9: " << (regime ? "true" : "false") << '\n';
    out << "# eta: " << eta_line << '\n';
    if (eta_residual) out << "# eta_residual: " << fmt(*eta_residual) << '\n';
    out << "# kramers_all_even: " << (kr.all_even ? "true" : "false") << '\n';
    out << "# probability_exceeds_one: " << (peak > 1.0 ? "true" : "false") << '\n';
    out << "t,P_flip,P_phi_fwd,P_phi_bwd,asymmetry\n";
    for (const auto& s : curve)
      out << fmt(s.t) << ',' << fmt(s.flip) << ',' << fmt(s.fwd) << ',' << fmt(s.bwd) << ',' << fmt(s.fwd - s.bwd)
          << '\n';
    return kOk;
  } catch (const DegenerateModel& e) {
    err << "DegenerateModel: " << e.what() << '\n';
    return kModelRegime;
  } catch (const RZero& e) {
    err << "RZero: " << e.what() << '\n';
    return kModelRegime;
  } catch (const NotDiagonalizable& e) {
    err << "NotDiagonalizable: " << e.what() << '\n';
    return kNumeric;
  } catch (const EvolutionRangeError& e) {
    err << "range error: " << e.what() << '\n';
    return kNumeric;
  } catch (const InvalidInput& e) {
    err << "invalid input: " << e.what() << '\n';
    return kInput;
  }
}

struct ScanFlags {
  std::string k1 = "1";
  std::string k2 = "1";
  std::string mu_b = "0";
  double omega2 = 1.0;
  double energy = 0.0;
  TimeGrid times{0.0, 10.0, 41};
  double tol = kDefaultTolerance;
  unsigned threads = 0;
};

int cmd_scan(const ScanFlags& f, std::ostream& out, std::ostream& err) {
  GridSpec k1;
  GridSpec k2;
  GridSpec mu;
  try {
    k1 = parse_grid(f.k1);
    k2 = parse_grid(f.k2);
    mu = parse_grid(f.mu_b);
  } catch (const ParseError& e) {
    err << "bad grid spec: " << e.what() << '\n';
    return kInput;
  }
  if (f.times.count < 1 || f.times.start > f.times.stop || !std::isfinite(f.omega2) || !std::isfinite(f.energy)) {
    err << "bad grid spec: time grid needs start <= stop and count >= 1\n";
    return kInput;
  }
  const GridSpec times{f.times.start, f.times.stop, f.times.count};

  const std::size_t total = static_cast<std::size_t>(k1.count) * k2.count * mu.count;
  std::vector<ScanRow> rows(total);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t idx = next++; idx < total; idx = next++) {
      const auto i = static_cast<int>(idx / (static_cast<std::size_t>(k2.count) * mu.count));
      const auto j = static_cast<int>(idx / mu.count % k2.count);
      const auto m = static_cast<int>(idx % mu.count);
      const sr::ModelParams p{f.energy, mu.at(m), f.omega2, k1.at(i), k2.at(j)};
      rows[idx] = scan_point(p, times, f.tol);
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const auto nthreads = static_cast<std::size_t>(std::min<std::size_t>(f.threads ? f.threads : hw, total));
  {
    std::vector<std::jthread> pool;
    for (std::size_t k = 1; k < nthreads; ++k) pool.emplace_back(worker);
    worker();
  }

  out << "k1,k2,muB,condition9,kramers_all_even,max_abs_asymmetry\n";
  for (const auto& r : rows)
    out << fmt(r.k1) << ',' << fmt(r.k2) << ',' << fmt(r.mu_b) << ',' << (r.condition9 ? "true" : "false") << ','
        << r.kramers_all_even << ',' << r.max_abs_asymmetry << '\n';
  return kOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Pseudohermitian spectra, Kramers-type antilinear symmetries and non-unitary evolution", "kramers"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  std::string path;
  double analyze_tol = kDefaultTolerance;
  auto* analyze = app.add_subcommand("analyze", "Classify a matrix, build eta and test for a Kramers witness");
  analyze->add_option("matrix", path, "Matrix file (dimension, then row-major complex entries)")->required();
  analyze->add_option("--tol", analyze_tol, "Relative tolerance")->capture_default_str();

  ModelFlags mf;
  auto* model = app.add_subcommand("model", "Spin-rotation two-level model: spectrum, eta and transition curves");
  model->add_option("--E", mf.params.energy, "Level energy E")->capture_default_str();
  model->add_option("--muB", mf.params.mu_b, "Magnetic term (product mu*B)")->capture_default_str();
  model->add_option("--omega2", mf.params.omega2, "Rotation component omega_2")->capture_default_str();
  model->add_option("--k1", mf.params.k1, "Coupling of the upper helicity entry")->capture_default_str();
  model->add_option("--k2", mf.params.k2, "Coupling of the lower helicity entry")->capture_default_str();
  model->add_option("--t-start", mf.times.start)->capture_default_str();
  model->add_option("--t-stop", mf.times.stop)->capture_default_str();
  model->add_option("--t-count", mf.times.count)->capture_default_str();
  model->add_option("--tol", mf.tol, "Relative tolerance")->capture_default_str();
  model->add_flag("--json", mf.json, "Emit a JSON report instead of header + CSV");

  ScanFlags sf;
  auto* scan = app.add_subcommand("scan", "Map the real-split / Kramers / asymmetry regions over a parameter grid");
  scan->add_option("--k1", sf.k1, "value or start:stop:count")->capture_default_str();
  scan->add_option("--k2", sf.k2, "value or start:stop:count")->capture_default_str();
  scan->add_option("--muB", sf.mu_b, "value or start:stop:count")->capture_default_str();
  scan->add_option("--omega2", sf.omega2)->capture_default_str();
  scan->add_option("--E", sf.energy)->capture_default_str();
  scan->add_option("--t-start", sf.times.start)->capture_default_str();
  scan->add_option("--t-stop", sf.times.stop)->capture_default_str();
  scan->add_option("--t-count", sf.times.count)->capture_default_str();
  scan->add_option("--tol", sf.tol, "Relative tolerance")->capture_default_str();
  scan->add_option("--threads", sf.threads, "Worker threads (0 = hardware concurrency)")->capture_default_str();

  std::vector<const char*> argv{"kramers"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInput;
  }

  if (*analyze) return cmd_analyze(path, analyze_tol, out, err);
  if (*model) return cmd_model(mf, out, err);
  return cmd_scan(sf, out, err);
}

}  // namespace kramers::cli
