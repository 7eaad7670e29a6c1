#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace momlat::cli {

enum ExitCode : int { kSuccess = 0, kVerificationFailed = 1, kUsageError = 2 };

enum class OutputFormat { csv, json };

struct RunConfig {
  std::string subcommand;
  double p0 = 0.0;
  double spacing = 0.1;
  long long n_points = 64;
  double x = 0.0;
  double phase = 0.0;  // phi0 = exp(i * phase)
  std::vector<double> spacings{0.1, 0.05, 0.025, 0.0125};
  double window_lo = -8.0;
  double window_hi = 8.0;
  double width = 1.0;  // square well L
  long long levels = 16;
  double hbar = 1.0;
  double tolerance = 1e-10;
  OutputFormat format = OutputFormat::csv;
  std::optional<std::string> out_path;
  std::string expression;
};

int run_verify(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_check(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_eigvec(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_spectrum(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_continuum(const RunConfig& config, std::ostream& out, std::ostream& err);
int run_well(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Parses argv, validates every flag, dispatches one subcommand. Data goes
/// to --out (or `out`), diagnostics to `err`.
int main(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace momlat::cli
