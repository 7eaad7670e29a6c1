#include "momlat/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "momlat/algebra.hpp"
#include "momlat/eigen.hpp"
#include "momlat/format.hpp"
#include "momlat/operators.hpp"
#include "momlat/report.hpp"

namespace momlat::cli {

namespace {

using report::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

MomentumLattice lattice_from(const RunConfig& config) {
  if (config.n_points < 1) {
    throw UsageError("n must be >= 1");
  }
  if (!(config.spacing > 0.0)) {
    throw UsageError("a must be positive");
  }
  return MomentumLattice(config.p0, config.spacing, static_cast<std::size_t>(config.n_points));
}

// Writes to --out when given, otherwise to the supplied stream.
void emit(const RunConfig& config, std::ostream& out, const std::string& text) {
  if (config.out_path) {
    std::ofstream file(*config.out_path, std::ios::binary);
    if (!file) {
      throw UsageError("cannot open output file '" + *config.out_path + "'");
    }
    file << text;
    return;
  }
  out << text;
}

struct SuiteOutcome {
  std::vector<algebra::SymbolicCheck> symbolic;
  std::vector<ResidualReport> numeric;
  bool pass = true;
};

SuiteOutcome run_suites(const MomentumLattice& lattice, double tolerance) {
  SuiteOutcome outcome;
  outcome.symbolic = algebra::verify_symbolic_suite();
  outcome.numeric = verify_identity_suite(lattice);
  for (const auto& c : outcome.symbolic) {
    outcome.pass = outcome.pass && c.zero;
  }
  for (const auto& r : outcome.numeric) {
    outcome.pass = outcome.pass && r.max_interior_residual < tolerance;
  }
  return outcome;
}

std::string render_suites(const SuiteOutcome& outcome, const RunConfig& config, json header) {
  if (config.format == OutputFormat::json) {
    header["symbolic"] = report::to_json(outcome.symbolic);
    header["numeric"] = report::to_json(outcome.numeric);
    header["tol"] = report::real(config.tolerance);
    header["pass"] = outcome.pass;
    return report::dump(header);
  }
  std::ostringstream text;
  report::write_csv(text, outcome.symbolic);
  text << '\n';
  report::write_csv(text, outcome.numeric);
  return text.str();
}

int finish_suites(const SuiteOutcome& outcome, const RunConfig& config, std::ostream& err) {
  std::size_t failures = 0;
  for (const auto& c : outcome.symbolic) {
    failures += c.zero ? 0 : 1;
  }
  for (const auto& r : outcome.numeric) {
    failures += r.max_interior_residual < config.tolerance ? 0 : 1;
  }
  err << (outcome.pass ? "PASS" : "FAIL") << ": " << outcome.symbolic.size() << " symbolic, " << outcome.numeric.size()
      << " numeric identities, " << failures << " failing (tol " << format_real(config.tolerance) << ")\n";
  return outcome.pass ? kSuccess : kVerificationFailed;
}

}  // namespace

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.n_points < 8) {
    throw UsageError("n must be ≥ 8");
  }
  const auto lattice = lattice_from(config);
  const auto outcome = run_suites(lattice, config.tolerance);
  emit(config, out, render_suites(outcome, config, {{"lattice", report::to_json(lattice)}}));
  return finish_suites(outcome, config, err);
}

int run_check(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto nf = algebra::normal_form(config.expression);
  if (config.format == OutputFormat::json) {
    emit(config, out,
         report::dump({{"expression", config.expression},
                       {"normal_form", nf.to_string()},
                       {"term_count", nf.term_count()},
                       {"zero", nf.is_zero()}}));
  } else {
    emit(config, out,
         "normal_form: " + nf.to_string() + "\nterms: " + std::to_string(nf.term_count()) + "\n" +
             (nf.is_zero() ? "ZERO" : "NONZERO") + "\n");
  }
  (void)err;
  return nf.is_zero() ? kSuccess : kVerificationFailed;
}

int run_eigvec(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto lattice = lattice_from(config);
  alpha(config.x, lattice.spacing());  // band check before any output
  const complex phi0 = std::polar(1.0, config.phase);
  const bool degenerate = std::abs(config.x * lattice.spacing()) == 1.0;

  const auto recurrence = eigenvector_recurrence(lattice, config.x, phi0);
  const EigenResult primary = degenerate ? recurrence : eigenvector_closed_form(lattice, config.x, phi0);
  const double scale = normalization_direct(primary);
  const auto unit = normalized(primary);

  json summary = report::eigen_envelope(unit, true);
  summary["normalization_direct"] = report::real(scale);
  if (degenerate) {
    summary["max_dev"] = nullptr;
    summary["phi0_abs_closed_form_N_eq_n"] = nullptr;
    summary["phi0_abs_closed_form_N_eq_n_minus_1"] = nullptr;
  } else {
    double deviation = 0.0;
    const double magnitude = primary.phi.max_abs();
    for (std::size_t j = 0; j < lattice.size(); ++j) {
      deviation = std::max(deviation, std::abs(recurrence.phi[j] - primary.phi[j]) / magnitude);
    }
    const int n = static_cast<int>(lattice.size());
    summary["max_dev"] = report::real(deviation);
    summary["phi0_abs_closed_form_N_eq_n"] = report::real(normalization_closed_form(config.x, lattice.spacing(), n));
    summary["phi0_abs_closed_form_N_eq_n_minus_1"] =
        report::real(normalization_closed_form(config.x, lattice.spacing(), n - 1));
  }
  summary["phi0_abs_direct"] = report::real(std::abs(unit.phi0));

  if (config.format == OutputFormat::json) {
    json envelope = summary;
    envelope["values"] = report::grid_values(unit.phi);
    emit(config, out, report::dump(envelope));
  } else {
    std::ostringstream text;
    write_grid_csv(text, unit.phi);
    emit(config, out, text.str());
    err << report::dump(summary);
  }
  return kSuccess;
}

int run_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  const auto lattice = lattice_from(config);
  const auto values = truncated_spectrum(lattice);
  (void)err;
  if (config.format == OutputFormat::json) {
    json list = json::array();
    for (const double v : values) {
      list.push_back(report::real(v));
    }
    emit(config, out,
         report::dump({{"a", report::real(lattice.spacing())}, {"n", lattice.size()}, {"eigenvalues", list}}));
    return kSuccess;
  }
  std::ostringstream text;
  text << "k,x\n";
  for (std::size_t k = 0; k < values.size(); ++k) {
    text << k << ',' << format_real(values[k]) << '\n';
  }
  emit(config, out, text.str());
  return kSuccess;
}

int run_continuum(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (config.spacings.size() < 3) {
    throw UsageError("continuum needs at least 3 spacings");
  }
  const auto table = continuum_scan(config.spacings, unit_gaussian, {config.window_lo, config.window_hi});
  if (config.format == OutputFormat::json) {
    json body = report::to_json(table);
    body["window"] = {report::real(config.window_lo), report::real(config.window_hi)};
    emit(config, out, report::dump(body));
  } else {
    std::ostringstream text;
    report::write_csv(text, table);
    emit(config, out, text.str());
  }
  err << "slope " << format_real(table.slope) << '\n';
  return kSuccess;
}

int run_well(const RunConfig& config, std::ostream& out, std::ostream& err) {
  if (!(config.width > 0.0)) {
    throw UsageError("L must be positive");
  }
  if (!(config.hbar > 0.0)) {
    throw UsageError("hbar must be positive");
  }
  if (config.levels < 8) {
    throw UsageError("levels must be ≥ 8 to run the identity suite");
  }
  const auto lattice = square_well_lattice(config.width, static_cast<std::size_t>(config.levels), config.hbar);
  const auto outcome = run_suites(lattice, config.tolerance);
  if (config.format == OutputFormat::json) {
    emit(config, out, render_suites(outcome, config, {{"lattice", report::to_json(lattice)}}));
  } else {
    std::ostringstream text;
    text << "p0=" << format_real(lattice.p0()) << "\na=" << format_real(lattice.spacing()) << "\nlevels=" << lattice.size()
         << "\n\n"
         << render_suites(outcome, config, {});
    emit(config, out, text.str());
  }
  return finish_suites(outcome, config, err);
}

namespace {

void add_lattice_flags(CLI::App* sub, RunConfig& config) {
  sub->add_option("--p0", config.p0, "base momentum p0");
  sub->add_option("--a", config.spacing, "lattice spacing a > 0");
  sub->add_option("--n", config.n_points, "number of lattice points");
}

void add_output_flags(CLI::App* sub, RunConfig& config) {
  sub->add_option("--format", config.format, "output format")
      ->transform(CLI::CheckedTransformer(std::map<std::string, OutputFormat>{{"csv", OutputFormat::csv},
                                                                              {"json", OutputFormat::json}}));
  sub->add_option_function<std::string>("--out", [&config](const std::string& p) { config.out_path = p; },
                                        "output path (default stdout)");
  sub->add_option("--tol", config.tolerance, "pass/fail tolerance for numeric residuals");
}

}  // namespace

int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig config;
  CLI::App app{"Operator calculus on a discrete momentum lattice", "momlat"};
  app.require_subcommand(1);

  auto* verify = app.add_subcommand("verify", "run the symbolic and numeric identity suites");
  add_lattice_flags(verify, config);
  add_output_flags(verify, config);

  auto* check = app.add_subcommand("check", "normal-order an expression and test it for zero");
  check->add_option("expression", config.expression, "operator expression")->required();
  add_output_flags(check, config);

  auto* eigvec = app.add_subcommand("eigvec", "position eigenvector for eigenvalue x");
  add_lattice_flags(eigvec, config);
  add_output_flags(eigvec, config);
  eigvec->add_option("--x", config.x, "position eigenvalue")->required();
  eigvec->add_option("--phase", config.phase, "phase of the seed phi0 = exp(i*phase)");

  auto* spectrum = app.add_subcommand("spectrum", "eigenvalues of the truncated position operator");
  add_lattice_flags(spectrum, config);
  add_output_flags(spectrum, config);

  auto* continuum = app.add_subcommand("continuum", "continuum-limit scan of [X,P] + i");
  add_output_flags(continuum, config);
  continuum->add_option("--spacings", config.spacings, "comma-separated decreasing spacings")->delimiter(',');
  std::string window = "-8:8";
  continuum->add_option("--window", window, "momentum window lo:hi");

  auto* well = app.add_subcommand("well", "square-well lattice and its identity suite");
  add_output_flags(well, config);
  well->add_option("--L", config.width, "well width L > 0");
  well->add_option("--levels", config.levels, "number of levels");
  well->add_option("--hbar", config.hbar, "reduced Planck constant");

  // The spacing default differs per subcommand.
  eigvec->preparse_callback([&config](std::size_t) {
    config.spacing = 1.0;
    config.n_points = 8;
  });
  spectrum->preparse_callback([&config](std::size_t) {
    config.spacing = 1.0;
    config.n_points = 8;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kUsageError;
  }

  try {
    if (*verify) return run_verify(config, out, err);
    if (*check) return run_check(config, out, err);
    if (*eigvec) return run_eigvec(config, out, err);
    if (*spectrum) return run_spectrum(config, out, err);
    if (*continuum) {
      const auto colon = window.find(':');
      std::size_t used_lo = 0;
      std::size_t used_hi = 0;
      try {
        if (colon == std::string::npos) throw std::invalid_argument("window");
        const std::string lo = window.substr(0, colon);
        const std::string hi = window.substr(colon + 1);
        config.window_lo = std::stod(lo, &used_lo);
        config.window_hi = std::stod(hi, &used_hi);
        if (used_lo != lo.size() || used_hi != hi.size()) throw std::invalid_argument("window");
      } catch (const std::exception&) {
        throw UsageError("--window must be lo:hi");
      }
      return run_continuum(config, out, err);
    }
    if (*well) return run_well(config, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const algebra::ParseError& e) {
    err << "parse error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace momlat::cli
